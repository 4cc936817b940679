"""Exact scalars, rational functions with restricted poles, and their expansions."""
from .cyclo import Cyclo, eps, inv, scalar_str
from .laurent import LaurentPoly
from .ratfn import RatFn, lin_factor
from .series import (DEFAULT_WINDOW, LaurentSeries, apply_hopf_op, delta_series,
                     expand_region, log_mixed_derivative)


def normalize(f: RatFn) -> RatFn:
    return f.normalize()


def laurent_at_diagonal(f: RatFn, i, j, k, depth):
    return f.laurent_at_diagonal(i, j, k, depth)


def residue_at(f: RatFn, i, j, k, m):
    return f.residue_at(i, j, k, m)


__all__ = ["Cyclo", "eps", "inv", "scalar_str", "LaurentPoly", "RatFn", "lin_factor",
           "LaurentSeries", "DEFAULT_WINDOW", "expand_region", "apply_hopf_op",
           "log_mixed_derivative", "delta_series", "normalize", "laurent_at_diagonal",
           "residue_at"]
