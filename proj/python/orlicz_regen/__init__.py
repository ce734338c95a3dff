"""Orlicz-norm bounds for additive functionals of regenerative Markov chains.

Thin Python surface over the C++ core: Young-function algebra (rho, zeta,
kappa, conjugation), Orlicz norms, the level-climbing counterexample chain
with exact regeneration laws, bound verification, optimality certificates,
and the limit-theorem experiments.
"""

try:
    from . import _orlicz_regen as _core  # installed layout
except ImportError:
    import _orlicz_regen as _core  # in-tree build: extension on sys.path

__all__ = [
    "GenYoungFn",
    "TowerChain",
    "YoungFn",
    "berry_esseen_experiment",
    "build_tower",
    "certify_counterexample",
    "clt_experiment",
    "conjugate",
    "conjugate_gen",
    "dominates",
    "eta_nu",
    "fitted_exp_exponent",
    "fitted_exponent",
    "fitted_log_power",
    "kappa_of",
    "lil_statistic",
    "normalize_assumption_A",
    "orlicz_norm",
    "pitman_check",
    "psi_alpha_norm",
    "rho_of",
    "run_golden_examples",
    "tail_bound_experiment",
    "tilde_phi",
    "verify_cor_nu",
    "verify_cor_pi",
    "verify_thm_nu",
    "verify_thm_pi",
    "zeta_of",
]

for _name in __all__:
    globals()[_name] = getattr(_core, _name)
del _name, _core
