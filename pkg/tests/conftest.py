from __future__ import annotations

import itertools
from functools import lru_cache

from coxeter353.finite_fields import build_field
from coxeter353.projective_linear import ProjectiveMatrix, is_in_psl, prime_power


@lru_cache(maxsize=None)
def psl_elements(q: int) -> tuple[ProjectiveMatrix, ...]:
    """Every element of L_2(q) as a normalised projective matrix."""
    p, n = prime_power(q)
    F = build_field(p, n)
    elems = list(F.elements())
    one, zero = F.one(), F.zero()
    out = []
    for lead, rest in ((one, itertools.product(elems, repeat=3)), (zero, itertools.product(elems, repeat=2))):
        for entries in rest:
            raw = (one, *entries) if lead == one else (zero, one, *entries)
            if raw[0] * raw[3] - raw[1] * raw[2] == 0:
                continue
            m = ProjectiveMatrix(raw, F)
            if is_in_psl(m):
                out.append(m)
    return tuple(out)
