"""k-free values along alpha-random walks."""

from ._kfreewalk import (
    CertifiedValue,
    CheckResult,
    CountReport,
    DecayFit,
    DensityConstant,
    DomainError,
    ExactMoments,
    MeanF,
    RefusalError,
    SumSplit,
    TrialBatch,
    WalkParams,
    WalkResult,
    M_k,
    beta_k,
    binom_congruence_sum,
    count_kfree,
    count_kfree_ap,
    exact_moments,
    expect_Xi,
    expect_XiXj,
    f_of_i,
    f_values,
    iroot,
    kfree_binom_sum,
    kfree_sieve,
    mean_f,
    mobius_sieve,
    one_over_zeta,
    oracle_full_paths,
    run_cli,
    run_trials,
    simulate_walk,
    theta_k,
    variance_decay,
    verify,
    zeta_k,
)

__all__ = [name for name in dir() if not name.startswith("_")]
