"""Exact slope computations for monomial syzygy bundles and kernel bundles on P^n."""

__version__ = "0.1.0"
# bump whenever any algorithm output can change; invalidates atlas caches
ENGINE_VERSION = "syzslope-engine-1"

from .monomial import Monomial, MonomialSet, divides, gcd, is_basepoint_free  # noqa: E402
from .slope import SlopeProfile, mu_max, mu_max_bruteforce, mu_max_closure  # noqa: E402

__all__ = [
    "Monomial",
    "MonomialSet",
    "SlopeProfile",
    "divides",
    "gcd",
    "is_basepoint_free",
    "mu_max",
    "mu_max_bruteforce",
    "mu_max_closure",
]
