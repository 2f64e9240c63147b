"""
Label-preserving symmetries of a polytope acting on integral points.
"""

import logging
from typing import Dict, List, Sequence

from src.cartan.cartan_matrix import CartanMatrix
from src.deform.assembly import assemble
from src.integral.certificate import Fingerprint, fingerprint
from src.integral.leaf import IntegralPoint
from src.polytope.labeled_polytope import LabeledPolytope, facet_isomorphisms

logger = logging.getLogger(__name__)


def label_automorphisms(G: LabeledPolytope) -> List[Dict[str, str]]:
    """Facet permutations preserving labels and the vertex set, identity first."""
    found = list(facet_isomorphisms(G, G))
    return sorted(found, key=lambda perm: [G.position(perm[s]) for s in G.facets])


def permute(A: CartanMatrix, perm: Dict[str, str]) -> CartanMatrix:
    """The matrix B with B[perm(s), perm(t)] = A[s, t], on the same index."""
    inverse = {t: s for s, t in perm.items()}
    idx = A.index
    return CartanMatrix(idx, [[A[inverse[s], inverse[t]] for t in idx] for s in idx])


def orbit_key(A: CartanMatrix, automorphisms: Sequence[Dict[str, str]]) -> Fingerprint:
    """Least fingerprint over the symmetry orbit of A."""
    return min(fingerprint(permute(A, perm)) for perm in automorphisms)


def quotient_points(G: LabeledPolytope, points: Sequence[IntegralPoint]) -> List[IntegralPoint]:
    """One representative (the first in order) per symmetry orbit."""
    automorphisms = label_automorphisms(G)
    seen = set()
    out = []
    for p in points:
        key = orbit_key(assemble(p.point).matrix, automorphisms)
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    logger.info("%d points fall into %d orbits of %d symmetries", len(points), len(out), len(automorphisms))
    return out
