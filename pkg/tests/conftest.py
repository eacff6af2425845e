from __future__ import annotations

from functools import lru_cache

from hypothesis import HealthCheck, settings

from cftbench.modular_data import su_datum

settings.register_profile("bench", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("bench")


@lru_cache(maxsize=None)
def su(n: int, k: int):
    return su_datum(n, k)


@lru_cache(maxsize=None)
def dihedral(n: int):
    from cftbench.doubles import dihedral_datum
    return dihedral_datum(n)


@lru_cache(maxsize=None)
def zn(n: int):
    from cftbench.doubles import zn_datum
    return zn_datum(n)
