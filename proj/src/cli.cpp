#include "kfreewalk/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "kfreewalk/constants.hpp"
#include "kfreewalk/counting.hpp"
#include "kfreewalk/exactdist.hpp"
#include "kfreewalk/format.hpp"
#include "kfreewalk/montecarlo.hpp"
#include "kfreewalk/verify.hpp"

namespace kfreewalk {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// tabular output

using Cell = std::variant<std::monostate, std::uint64_t, std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    // Scalar summary fields: CSV footer lines "# name,value", JSON keys.
    std::vector<std::pair<std::string, Cell>> footer;
};

std::string cell_text(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else {
                return std::to_string(v);
            }
        },
        c);
}

ordered_json cell_json(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else {
                return v;
            }
        },
        c);
}

std::string render(const Table& t, const std::string& format)
{
    std::ostringstream os;
    if (format == "json") {
        ordered_json doc;
        doc["rows"] = ordered_json::array();
        for (const auto& row : t.rows) {
            ordered_json obj;
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                obj[t.columns[i]] = cell_json(row[i]);
            }
            doc["rows"].push_back(std::move(obj));
        }
        for (const auto& [name, value] : t.footer) {
            doc[name] = cell_json(value);
        }
        os << doc.dump(2) << '\n';
        return os.str();
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? "," : "") << t.columns[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << cell_text(row[i]);
        }
        os << '\n';
    }
    for (const auto& [name, value] : t.footer) {
        os << "# " << name << ',' << cell_text(value) << '\n';
    }
    return os.str();
}

// Writes to `path`, or to `out` when path is empty. A failed write removes
// the partial file.
void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    f << text;
    f.flush();
    if (!f) {
        f.close();
        std::remove(path.c_str());
        throw IoError("write to '" + path + "' failed; partial file removed");
    }
}

// ---------------------------------------------------------------------------
// options

struct Options {
    std::int64_t k = 3;
    std::int64_t a = 2;
    std::int64_t b = 3;
    std::int64_t r = 0;
    std::int64_t q = 1;
    double alpha = 0.5;
    std::uint64_t N = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t prime_limit = kDefaultPrimeLimit;
    std::uint64_t pair_cap = kDefaultPairCap;
    std::string out;
    std::string format = "csv";
    std::string grid;
    bool variance = false;
    bool oracle = false;
    bool quick = false;
    std::string inject_fault;

    // Where a field's value came from, for error messages.
    std::map<std::string, std::string> origin;
};

std::string origin_of(const Options& o, const std::string& field)
{
    const auto it = o.origin.find(field);
    return it == o.origin.end() ? std::string{} : " (" + it->second + ")";
}

void require(bool ok, const Options& o, const std::string& field, const std::string& message)
{
    if (!ok) {
        throw UsageError(message + origin_of(o, field));
    }
}

WalkParams walk_params(const Options& o)
{
    require(o.k >= 2, o, "k", "k must be at least 2");
    require(o.a >= 1, o, "a", "a must be at least 1");
    require(o.b >= 1, o, "b", "b must be at least 1");
    require(o.a != o.b, o, "a", "a must differ from b");
    require(o.r >= 0, o, "r", "r must be non-negative");
    require(o.alpha > 0.0 && o.alpha < 1.0, o, "alpha", "alpha must lie in (0,1)");
    WalkParams p;
    p.k = static_cast<unsigned>(o.k);
    p.a = static_cast<std::uint64_t>(o.a);
    p.b = static_cast<std::uint64_t>(o.b);
    p.r = static_cast<std::uint64_t>(o.r);
    p.alpha = o.alpha;
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return p;
}

std::vector<std::uint64_t> parse_grid(const std::string& text, const Options& o)
{
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::uint64_t v = 0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        require(res.ec == std::errc{} && res.ptr == item.data() + item.size() && v >= 1, o, "grid",
                "grid entries must be positive integers, got '" + item + "'");
        out.push_back(v);
    }
    return out;
}

void add_walk_options(CLI::App* cmd, Options& o, bool with_alpha)
{
    cmd->add_option("-k", o.k, "k-freeness exponent (>= 2)")->capture_default_str();
    cmd->add_option("-a", o.a, "step taken with probability alpha")->capture_default_str();
    cmd->add_option("-b", o.b, "step taken with probability 1 - alpha")->capture_default_str();
    cmd->add_option("-r", o.r, "starting point (>= 0)")->capture_default_str();
    if (with_alpha) {
        cmd->add_option("--alpha", o.alpha, "probability of the a-step, in (0,1)")->capture_default_str();
    }
}

void add_output_options(CLI::App* cmd, Options& o)
{
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

// ---------------------------------------------------------------------------
// config file: flat key=value lines, '#' comments. Command-line flags win.

struct ConfigEntry {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

const std::map<std::string, char>& config_keys()
{
    // i: integer, u: unsigned, f: real, s: string, b: boolean flag
    static const std::map<std::string, char> keys{
        {"k", 'i'},          {"a", 'i'},        {"b", 'i'},       {"r", 'i'},      {"q", 'i'},
        {"alpha", 'f'},      {"N", 'u'},        {"trials", 'u'},  {"seed", 'u'},   {"prime-limit", 'u'},
        {"pair-cap", 'u'},   {"out", 's'},      {"format", 's'},  {"grid", 's'},   {"variance", 'b'},
        {"oracle", 'b'},     {"quick", 'b'},
    };
    return keys;
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<ConfigEntry> load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f) {
        throw UsageError("cannot read config file '" + path + "'");
    }
    std::vector<ConfigEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string where = "config " + path + ":" + std::to_string(lineno);
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw UsageError(where + ": expected key=value");
        }
        ConfigEntry e{trim(body.substr(0, eq)), trim(body.substr(eq + 1)), lineno};
        const auto it = config_keys().find(e.key);
        if (it == config_keys().end()) {
            throw UsageError(where + ": unknown key '" + e.key + "'");
        }
        const char* first = e.value.data();
        const char* last = first + e.value.size();
        bool ok = true;
        switch (it->second) {
        case 'i': {
            std::int64_t v = 0;
            const auto res = std::from_chars(first, last, v);
            ok = res.ec == std::errc{} && res.ptr == last;
            break;
        }
        case 'u': {
            std::uint64_t v = 0;
            const auto res = std::from_chars(first, last, v);
            ok = res.ec == std::errc{} && res.ptr == last;
            break;
        }
        case 'f': {
            char* end = nullptr;
            std::strtod(e.value.c_str(), &end);
            ok = !e.value.empty() && end == e.value.c_str() + e.value.size();
            break;
        }
        case 'b':
            ok = e.value == "true" || e.value == "false" || e.value == "1" || e.value == "0";
            break;
        default:
            break;
        }
        if (!ok) {
            throw UsageError(where + ": field '" + e.key + "': invalid value '" + e.value + "'");
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::string option_token(const std::string& key)
{
    return key.size() == 1 || key == "N" ? "-" + key : "--" + key;
}

bool token_present(const std::vector<std::string>& args, const std::string& token)
{
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == token || a.rfind(token + "=", 0) == 0;
    });
}

// Splices config values (for options the user did not pass) in right after
// the subcommand name.
std::vector<std::string> merge_config(const CLI::App& app, std::vector<std::string> args,
                                      Options& o)
{
    const auto cfg = std::find(args.begin(), args.end(), "--config");
    if (cfg == args.end()) {
        return args;
    }
    if (cfg + 1 == args.end()) {
        throw UsageError("--config requires a path");
    }
    const std::string path = *(cfg + 1);
    args.erase(cfg, cfg + 2);

    const auto sub = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
        return app.get_subcommand_no_throw(a) != nullptr;
    });
    if (sub == args.end()) {
        return args;
    }
    const CLI::App* cmd = app.get_subcommand_no_throw(*sub);
    std::vector<std::string> injected;
    for (const auto& e : load_config(path)) {
        const std::string token = option_token(e.key);
        if (cmd->get_option_no_throw(token) == nullptr || token_present(args, token)) {
            continue;
        }
        o.origin[e.key] = "config " + path + ":" + std::to_string(e.line);
        if (config_keys().at(e.key) == 'b') {
            if (e.value == "true" || e.value == "1") {
                injected.push_back(token);
            }
            continue;
        }
        injected.push_back(token);
        injected.push_back(e.value);
    }
    args.insert(sub + 1, injected.begin(), injected.end());
    return args;
}

// ---------------------------------------------------------------------------
// commands

Table density_table(const std::vector<std::string>& keys, const std::vector<Cell>& values,
                    const DensityConstant& d, std::uint64_t prime_limit, const std::string& note)
{
    Table t;
    t.columns = keys;
    t.columns.insert(t.columns.end(), {"prime_limit", "value", "tail_bound", "note"});
    std::vector<Cell> row = values;
    row.insert(row.end(), {prime_limit, d.value, d.tail_bound, note});
    t.rows.push_back(std::move(row));
    return t;
}

int cmd_theta(const Options& o, std::ostream& out)
{
    const WalkParams p = walk_params(o);
    require(o.prime_limit >= 2, o, "prime-limit", "prime-limit must be at least 2");
    const DensityConstant d = theta_k(p, o.prime_limit);
    const std::string note = gcd(p.a, p.b) == 1 ? "gcd(a,b)=1 so theta equals 1/zeta(k)" : "";
    const Table t = density_table({"k", "a", "b", "r"},
                                  {std::uint64_t{p.k}, p.a, p.b, p.r}, d, o.prime_limit, note);
    emit(render(t, o.format), o.out, out);
    return 0;
}

int cmd_beta(const Options& o, std::ostream& out)
{
    require(o.k >= 2, o, "k", "k must be at least 2");
    require(o.q >= 1, o, "q", "q must be at least 1");
    require(o.r >= 0 && o.r < o.q, o, "r", "r must lie in [0, q-1]");
    require(o.prime_limit >= 2, o, "prime-limit", "prime-limit must be at least 2");
    const auto k = static_cast<unsigned>(o.k);
    const auto q = static_cast<std::uint64_t>(o.q);
    const auto r = static_cast<std::uint64_t>(o.r);
    DensityConstant d;
    try {
        d = beta_k(k, q, r, o.prime_limit);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const Table t = density_table({"k", "q", "r"}, {std::uint64_t{k}, q, r}, d, o.prime_limit, "");
    emit(render(t, o.format), o.out, out);
    return 0;
}

int cmd_simulate(const Options& o, bool seed_given, std::ostream& out)
{
    const WalkParams p = walk_params(o);
    require(o.N >= 1, o, "N", "N must be at least 1");
    require(o.trials >= 1, o, "trials", "trials must be at least 1");
    std::uint64_t seed = o.seed;
    if (!seed_given) {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    try {
        max_position(p, o.N);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const TrialBatch batch = run_trials(p, o.N, o.trials, seed);
    const DensityConstant theta = theta_k(p, o.prime_limit);

    if (!o.out.empty()) {
        Table t;
        t.columns = {"trial", "seed", "sbar"};
        for (std::uint64_t i = 0; i < batch.trials; ++i) {
            t.rows.push_back({i, batch.seeds[i], batch.sbar_values[i]});
        }
        emit(render(t, o.format), o.out, out);
    }
    ordered_json summary;
    summary["k"] = p.k;
    summary["a"] = p.a;
    summary["b"] = p.b;
    summary["r"] = p.r;
    summary["alpha"] = p.alpha;
    summary["N"] = o.N;
    summary["trials"] = o.trials;
    summary["seed"] = seed;
    summary["mean"] = batch.mean;
    summary["sample_variance"] = batch.sample_variance;
    summary["theta"] = theta.value;
    summary["theta_tail_bound"] = theta.tail_bound;
    summary["abs_gap"] = std::abs(batch.mean - theta.value);
    out << summary.dump(2) << '\n';
    return 0;
}

int cmd_exact(const Options& o, std::ostream& out, std::ostream& err)
{
    const WalkParams p = walk_params(o);
    require(o.N >= 1, o, "N", "N must be at least 1");
    ExactMoments m;
    try {
        m = exact_moments(p, o.N, o.variance, o.pair_cap);
    } catch (const RefusalError& e) {
        throw UsageError(e.what());
    }
    const auto f = f_values(p, o.N);
    const double spread = std::sqrt(p.alpha * (1.0 - p.alpha));
    double max_scaled_gap = 0.0;

    Table t;
    t.columns = {"i", "e_xi", "f_i", "gap"};
    for (std::uint64_t i = 1; i <= o.N; ++i) {
        const double gap = m.e_xi[i - 1] - f[i - 1];
        max_scaled_gap = std::max(max_scaled_gap, std::abs(gap) * spread *
                                                      std::pow(static_cast<double>(i), 0.5 - 1.0 / p.k));
        t.rows.push_back({i, m.e_xi[i - 1], f[i - 1], gap});
    }
    t.footer.emplace_back("e_sbar", m.e_sbar);
    if (m.v_sbar) {
        t.footer.emplace_back("v_sbar", *m.v_sbar);
        t.footer.emplace_back("v_sbar_raw", *m.v_sbar_raw);
        if (*m.v_sbar_raw < 0.0) {
            err << "note: negative variance " << format_double(*m.v_sbar_raw) << " clamped to 0\n";
        }
    }
    t.footer.emplace_back("max_scaled_gap", max_scaled_gap);

    int code = 0;
    if (o.oracle) {
        require(o.N <= kOracleMaxN, o, "N",
                "--oracle requires N <= " + std::to_string(kOracleMaxN));
        const ExactMoments orc = oracle_full_paths(p, o.N);
        double diff = std::abs(m.e_sbar - orc.e_sbar);
        for (std::size_t i = 0; i < m.e_xi.size(); ++i) {
            diff = std::max(diff, std::abs(m.e_xi[i] - orc.e_xi[i]));
        }
        if (m.v_sbar) {
            diff = std::max(diff, std::abs(*m.v_sbar - *orc.v_sbar));
        }
        t.footer.emplace_back("oracle_max_abs_diff", diff);
        if (diff > 1e-10) {
            err << "oracle mismatch: " << format_double(diff) << " > 1e-10\n";
            code = kExitMismatch;
        }
    }
    emit(render(t, o.format), o.out, out);
    return code;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    VerifyOptions vo;
    vo.quick = o.quick;
    if (!o.inject_fault.empty()) {
        require(o.inject_fault == "sieve", o, "inject-fault", "unknown fault '" + o.inject_fault + "'");
        vo.inject_sieve_fault = true;
    }
    const auto results = run_verify_suite(vo);
    ordered_json doc;
    doc["quick"] = o.quick;
    doc["checks"] = ordered_json::array();
    int failures = 0;
    for (const auto& c : results) {
        ordered_json j;
        j["name"] = c.name;
        j["passed"] = c.passed;
        j["statistic"] = c.statistic;
        j["threshold"] = c.threshold;
        j["detail"] = c.detail;
        doc["checks"].push_back(std::move(j));
        failures += c.passed ? 0 : 1;
    }
    doc["failures"] = failures;
    emit(doc.dump(2) + "\n", o.out, out);
    return failures;
}

int cmd_count(const Options& o, std::ostream& out)
{
    require(o.k >= 2, o, "k", "k must be at least 2");
    require(o.N >= 1, o, "N", "N must be at least 1");
    require(o.q >= 1, o, "q", "q must be at least 1");
    require(o.r >= 0 && o.r < o.q, o, "r", "r must lie in [0, q-1]");
    CountOptions co;
    co.workers = resolve_workers();
    co.prime_limit = o.prime_limit;
    const CountReport rep = count_kfree_ap(o.N, static_cast<unsigned>(o.k),
                                           static_cast<std::uint64_t>(o.q),
                                           static_cast<std::uint64_t>(o.r), co);
    Table t;
    t.columns = {"N", "k", "q", "r", "count", "density", "predicted", "residual"};
    t.rows.push_back({rep.N, std::uint64_t{rep.k}, rep.q, rep.r, rep.count, rep.density,
                      rep.predicted ? Cell{*rep.predicted} : Cell{},
                      rep.residual ? Cell{*rep.residual} : Cell{}});
    emit(render(t, o.format), o.out, out);
    return 0;
}

int cmd_decay(const Options& o, bool seed_given, std::ostream& out, std::ostream& err)
{
    const WalkParams p = walk_params(o);
    std::vector<std::uint64_t> Ns;
    if (o.grid.empty()) {
        for (unsigned e = 10; e <= 17; ++e) {
            Ns.push_back(std::uint64_t{1} << e);
        }
    } else {
        Ns = parse_grid(o.grid, o);
    }
    require(o.trials >= 2, o, "trials", "trials must be at least 2");
    std::uint64_t seed = o.seed;
    if (!seed_given) {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    DecayFit fit;
    try {
        fit = variance_decay(p, Ns, o.trials, seed);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    for (const auto& w : fit.warnings) {
        err << "warning: " << w << '\n';
    }
    Table t;
    t.columns = {"N", "mean", "variance"};
    for (std::size_t i = 0; i < fit.Ns.size(); ++i) {
        t.rows.push_back({fit.Ns[i], fit.means[i], fit.variances[i]});
    }
    t.footer.emplace_back("seed", seed);
    t.footer.emplace_back("slope", fit.slope);
    t.footer.emplace_back("intercept", fit.intercept);
    t.footer.emplace_back("r_squared", fit.r_squared);
    t.footer.emplace_back("slope_bound", 1.0 / p.k - 0.5 + 0.15);
    emit(render(t, o.format), o.out, out);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"k-free numbers on alpha-random walks", "kfreewalk"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value file; flags take precedence");

    auto* theta = app.add_subcommand("theta", "limiting proportion theta_k(a,b,r)");
    add_walk_options(theta, o, false);
    theta->add_option("--prime-limit", o.prime_limit, "largest prime in the Euler product")->capture_default_str();
    add_output_options(theta, o);

    auto* beta = app.add_subcommand("beta", "density of k-free numbers in r mod q");
    beta->add_option("-k", o.k, "k-freeness exponent")->capture_default_str();
    beta->add_option("-q", o.q, "modulus")->capture_default_str();
    beta->add_option("-r", o.r, "residue in [0, q-1]")->capture_default_str();
    beta->add_option("--prime-limit", o.prime_limit, "largest prime in the Euler product")->capture_default_str();
    add_output_options(beta, o);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo walks");
    add_walk_options(simulate, o, true);
    simulate->add_option("-N", o.N, "steps per walk")->required();
    simulate->add_option("--trials", o.trials, "number of walks")->default_val(64);
    auto* sim_seed = simulate->add_option("--seed", o.seed, "master seed (default: entropy)");
    simulate->add_option("--prime-limit", o.prime_limit, "largest prime for theta")->capture_default_str();
    add_output_options(simulate, o);

    auto* exact = app.add_subcommand("exact", "exact E(X_i), E(S_N) and V(S_N)");
    add_walk_options(exact, o, true);
    exact->add_option("-N", o.N, "number of steps")->required();
    exact->add_flag("--variance", o.variance, "also compute V(S_N)");
    exact->add_flag("--oracle", o.oracle, "cross-check against full path enumeration (N <= 20)");
    exact->add_option("--pair-cap", o.pair_cap, "largest N for which variance is computed")->capture_default_str();
    add_output_options(exact, o);

    auto* verify = app.add_subcommand("verify", "pinned invariant suite");
    verify->add_flag("--quick", o.quick, "reduced grid");
    verify->add_option("--out", o.out, "output path (default: stdout)");
    verify->add_option("--inject-fault", o.inject_fault)->group("");  // test-only

    auto* count = app.add_subcommand("count", "count k-free numbers up to N, optionally in r mod q");
    count->add_option("-k", o.k, "k-freeness exponent")->capture_default_str();
    count->add_option("-N", o.N, "upper limit")->required();
    count->add_option("-q", o.q, "modulus")->capture_default_str();
    count->add_option("-r", o.r, "residue in [0, q-1]")->capture_default_str();
    count->add_option("--prime-limit", o.prime_limit, "largest prime for the predicted density")->capture_default_str();
    add_output_options(count, o);

    auto* decay = app.add_subcommand("decay", "variance decay of S_N across an N grid");
    add_walk_options(decay, o, true);
    decay->add_option("--grid", o.grid, "comma-separated N values (default 2^10..2^17)");
    decay->add_option("--trials", o.trials, "walks per grid point")->default_val(256);
    auto* decay_seed = decay->add_option("--seed", o.seed, "master seed (default: entropy)");
    add_output_options(decay, o);

    std::vector<std::string> argv;
    try {
        argv = merge_config(app, args, o);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        if (const auto subs = app.get_subcommands(); !subs.empty()) {
            out << subs.front()->help();
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (theta->parsed()) {
            return cmd_theta(o, out);
        }
        if (beta->parsed()) {
            return cmd_beta(o, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(o, sim_seed->count() > 0, out);
        }
        if (exact->parsed()) {
            return cmd_exact(o, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(o, out);
        }
        if (count->parsed()) {
            return cmd_count(o, out);
        }
        if (decay->parsed()) {
            return cmd_decay(o, decay_seed->count() > 0, out, err);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace kfreewalk
