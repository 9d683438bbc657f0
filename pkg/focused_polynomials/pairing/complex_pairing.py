"""
The scalar product <f, g> = E f(z) conj(g(z)) of real polynomials under the standard
complex Gaussian measure on C^n. Monomials are orthogonal with <x^alpha, x^alpha> = alpha!,
and for products of linear forms the pairing is a permanent of inner products:

    < prod_s <a_{i_s}, x>, prod_t <b_{j_t}, x> > = per [ <a_{i_s}, b_{j_t}> ]_{s,t}.
"""
from typing import Iterator, Tuple
from itertools import product
import math

import numpy as np

from . import PartitionInstance
from .. import DEFAULT_PARTITION_CAP
from ..exceptions import CapExceededError, ValidationError
from ..integration.estimator import EstimateReport, EstimatorConfig, run_randomized
from ..matchings.permanent import permanent
from ..polynomials import FocusedPair, MonomialPolynomial
from ..polynomials.core import compute_delta, restrict_pair
from ..utils import get_logger, get_setting


def pairing_exact_permanent(pair: FocusedPair) -> float:
    """sum_{I,J} alpha_I beta_J per(C_IJ), with (C_IJ)_st = <a_{i_s}, b_{j_t}>."""
    inner = pair.a_generators @ pair.b_generators.T
    return math.fsum(
        f_term.weight * g_term.weight * permanent(inner[np.ix_(f_term.indices, g_term.indices)])
        for f_term in pair.f_terms
        for g_term in pair.g_terms
        if f_term.weight and g_term.weight
    )


def pairing_exact_monomial(f: MonomialPolynomial, g: MonomialPolynomial):
    """
    sum over shared exponents alpha of f_alpha g_alpha alpha_1! ... alpha_n!.
    Integer coefficients give an exact integer.
    """
    if f.n != g.n:
        raise ValidationError(f"Cannot pair polynomials in {f.n} and {g.n} variables.")
    parts = [
        coefficient * g.terms[exponents] * math.prod(math.factorial(e) for e in exponents)
        for exponents, coefficient in f.terms.items()
        if exponents in g.terms
    ]
    if all(isinstance(part, int) for part in parts):
        return sum(parts)
    return math.fsum(parts)


def pairing_randomized(pair: FocusedPair, cfg: EstimatorConfig) -> EstimateReport:
    """
    Median over trials of (n/k)^m times the exact pairing of f and g restricted to a
    random k-dimensional subspace. Only the cosines between a_i and b_j need to be positive.
    """
    certificate = compute_delta(pair.a_generators, cross_with=pair.b_generators)
    return run_randomized(
        n=pair.n,
        number_of_generators=max(len(pair.a_generators), len(pair.b_generators)),
        delta=certificate.delta,
        scaling_exponent=pair.m,
        exact_on=lambda L: pairing_exact_permanent(restrict_pair(pair, L)),
        cfg=cfg,
    )


def _check_partition_cap(inst: PartitionInstance):
    cap = get_setting("FOCUSED_PARTITION_CAP", DEFAULT_PARTITION_CAP)
    size = (inst.M + 1) ** len(inst.a_vectors)
    if size > cap:
        raise CapExceededError(
            f"The instance has (M+1)^N = {size} candidate solutions, beyond the cap of {cap}."
        )


def _fits(exponents: Tuple[int, ...], bound: Tuple[int, ...]) -> bool:
    return all(e <= b for e, b in zip(exponents, bound))


def vector_partition_demo(inst: PartitionInstance) -> int:
    """
    The number of solutions as <f, x^b> / b!, where f = prod_i (1 + x^{a_i} + ... + x^{M a_i}).
    Monomials of f that exceed b in some coordinate can never contribute and are dropped
    while expanding.
    """
    _check_partition_cap(inst)
    expansion = {(0,) * inst.n: 1}
    for a in inst.a_vectors:
        grown = {}
        for exponents, coefficient in expansion.items():
            for k in range(inst.M + 1):
                raised = tuple(e + k * ai for e, ai in zip(exponents, a))
                if not _fits(raised, inst.b):
                    break
                grown[raised] = grown.get(raised, 0) + coefficient
        expansion = grown
    get_logger().debug(f"Pruned expansion has {len(expansion)} monomials.")
    f = MonomialPolynomial(n=inst.n, terms=expansion)
    g = MonomialPolynomial(n=inst.n, terms={inst.b: 1})
    return pairing_exact_monomial(f, g) // math.prod(math.factorial(b) for b in inst.b)


def partition_solutions(inst: PartitionInstance) -> Iterator[Tuple[int, ...]]:
    """All (k_1, ..., k_N) in {0, ..., M}^N with sum_i k_i a_i = b."""
    _check_partition_cap(inst)
    for ks in product(range(inst.M + 1), repeat=len(inst.a_vectors)):
        total = tuple(
            sum(k * a[j] for k, a in zip(ks, inst.a_vectors)) for j in range(inst.n)
        )
        if total == inst.b:
            yield ks


def count_vector_partitions(inst: PartitionInstance) -> int:
    return sum(1 for _ in partition_solutions(inst))
