"""
selftest.py

Property suites run by `spectra selftest`. Every suite is registered with the
`@suite("<name>")` decorator and receives

    (report, rng, tol) -> None

recording its worst-case residuals as verdicts on the report. Each suite
draws from its own generator seeded by (seed, suite position), so a subset
run reproduces the numbers of a full run.

Gabriel Braun, 2026
"""

import logging
from typing import Callable

import numpy as np

from spectra import abelian, circle, riesz, schur, spectral
from spectra.errors import NotNormal
from spectra.linalg import Tolerance, hermitian_eig, identity
from spectra.report import RunReport
from spectra.utils import random_matrix, random_normal, random_unitary, random_vector

logger = logging.getLogger(__name__)

Suite = Callable[[RunReport, np.random.Generator, Tolerance], None]
SUITES: dict[str, Suite] = {}


def suite(name: str):
    def deco(fn: Suite) -> Suite:
        SUITES[name] = fn
        return fn

    return deco


def run_selftest(
    report: RunReport, seed: int, tol: Tolerance, only: list[str] | None = None
) -> RunReport:
    names = list(SUITES)
    for position, name in enumerate(names):
        if only and name not in only:
            continue
        logger.info("running suite '%s'", name)
        SUITES[name](report, np.random.default_rng([seed, position]), tol)
    return report


# ======================================================================
# SCHUR
# ======================================================================
@suite("schur")
def schur_suite(report: RunReport, rng: np.random.Generator, tol: Tolerance) -> None:
    reconstruction = unitarity = lower = oracle = deflation = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 65))
        a = random_matrix(rng, n)
        a_norm = float(np.linalg.norm(a, "fro"))
        f = schur.schur_decompose(a, tol, rng=rng)
        reconstruction = max(reconstruction, f.reconstruction_error(a) / a_norm)
        unitarity = max(unitarity, f.unitarity_defect)
        lower = max(lower, f.lower_mass / a_norm)
        if n <= schur.ORACLE_MAX_N:
            oracle = max(
                oracle, schur.multiset_distance(f.eigenvalues, schur.char_poly_roots(a))
            )
            g = schur.schur_decompose(a, tol, method="deflation", rng=rng)
            deflation = max(deflation, g.reconstruction_error(a) / a_norm)

    report.check("schur.reconstruction", reconstruction, 1e-10)
    report.check("schur.unitarity", unitarity, 1e-11)
    report.check("schur.lower_mass", lower, 1e-10)
    report.check("schur.oracle_distance", oracle, 1e-8)
    report.check("schur.deflation_reconstruction", deflation, 1e-10)


# ======================================================================
# SPECTRAL THEOREM
# ======================================================================
@suite("spectral")
def spectral_suite(report: RunReport, rng: np.random.Generator, tol: Tolerance) -> None:
    structure_ok = True
    reconstruction = projector = corollary = 0.0
    for _ in range(50):
        k = int(rng.integers(1, 5))
        distinct = 3.0 * (rng.standard_normal(k) + 1j * rng.standard_normal(k))
        counts = rng.integers(1, 4, size=k)
        t, _ = random_normal(rng, np.repeat(distinct, counts))
        t_norm = float(np.linalg.norm(t, "fro"))

        dec = spectral.spectral_decompose(t, tol, rng=rng)
        found = np.array(dec.eigenvalues)
        if found.size != k:
            structure_ok = False
        else:
            match = [int(np.argmin(np.abs(found - lam))) for lam in distinct]
            structure_ok &= sorted(match) == list(range(k)) and all(
                dec.multiplicities[j] == c for j, c in zip(match, counts)
            )

        reconstruction = max(
            reconstruction, float(np.linalg.norm(dec.reconstruct() - t, "fro")) / t_norm
        )
        projector = max(
            projector,
            *dec.idempotence_defects(),
            *dec.self_adjoint_defects(),
            dec.resolution_defect(),
            dec.orthogonality_defect(),
        )
        f = schur.schur_decompose(t, tol, rng=rng)
        corollary = max(corollary, spectral.off_diagonal_mass(f.b) / t_norm)

    try:
        spectral.spectral_decompose([[0, 1], [0, 0]], tol)
        raised = False
    except NotNormal:
        raised = True

    report.check("spectral.structure", None, 0.0, passed=structure_ok)
    report.check("spectral.reconstruction", reconstruction, 1e-9)
    report.check("spectral.projections", projector, 1e-10)
    report.check("spectral.not_normal_raised", None, 0.0, passed=raised)
    report.check("spectral.schur_offdiagonal", corollary, 1e-8)


# ======================================================================
# FINITE ABELIAN GROUPS
# ======================================================================
SUITE_GROUPS = [(2,), (5,), (8,), (2, 3), (4, 9), (2, 2, 2)]


def _character_gram_defect(g: abelian.FiniteAbelianGroup) -> float:
    table = abelian.character_table(g)
    gram = table @ table.conj().T / g.order
    return float(np.max(np.abs(gram - identity(g.order))))


def _product_dual_defects(g: abelian.FiniteAbelianGroup) -> tuple[bool, bool]:
    if g.rank < 2:
        return True, True
    left = abelian.FiniteAbelianGroup(factor_orders=g.factor_orders[:1])
    right = abelian.FiniteAbelianGroup(factor_orders=g.factor_orders[1:])
    chars = [tuple(int(c) for c in m) for m in abelian.dual_group(g)]
    images = [abelian.product_dual_iso(left, right, m) for m in chars]
    bijective = len(set(images)) == len(chars)

    multiplicative = True
    for m, (m_left, m_right) in zip(chars, images):
        for k, (k_left, k_right) in zip(chars, images):
            product = abelian.product_dual_iso(
                left, right, abelian.character_multiply(g, m, k)
            )
            multiplicative &= product == (
                abelian.character_multiply(left, m_left, k_left),
                abelian.character_multiply(right, m_right, k_right),
            )
    return bijective, multiplicative


def _crt_tables_agree(n: int) -> bool:
    cyclic = abelian.character_table(abelian.FiniteAbelianGroup.cyclic(n))
    product, elem_map, char_map = abelian.crt_reindex(n)
    table = abelian.character_table(product)
    rows, cols = product.index_of(char_map), product.index_of(elem_map)
    return bool(np.array_equal(cyclic, table[np.ix_(rows, cols)]))


@suite("abelian")
def abelian_suite(report: RunReport, rng: np.random.Generator, tol: Tolerance) -> None:
    gram = plancherel = round_trip = 0.0
    bijective = multiplicative = True
    for orders in SUITE_GROUPS:
        g = abelian.FiniteAbelianGroup(factor_orders=orders)
        gram = max(gram, _character_gram_defect(g))
        for _ in range(100):
            values = random_vector(rng, g.order).ravel()
            f = abelian.GroupSignal(group=g, values=values)
            plancherel = max(
                plancherel, abs(abelian.plancherel_gap(g, f)) / f.norm_squared()
            )
            back = abelian.inverse_transform(g, abelian.fourier_transform(g, f))
            round_trip = max(round_trip, float(np.max(np.abs(back.values - values))))
        b, m = _product_dual_defects(g)
        bijective &= b
        multiplicative &= m

    report.check("abelian.character_gram", gram, 1e-12)
    report.check("abelian.plancherel", plancherel, 1e-12)
    report.check("abelian.round_trip", round_trip, 1e-12)
    report.check("abelian.product_dual_bijective", None, 0.0, passed=bijective)
    report.check("abelian.product_dual_multiplicative", None, 0.0, passed=multiplicative)
    report.check(
        "abelian.crt_tables",
        None,
        0.0,
        passed=all(_crt_tables_agree(n) for n in (6, 12, 360)),
    )


# ======================================================================
# RIESZ SEQUENCES
# ======================================================================
@suite("riesz")
def riesz_suite(report: RunReport, rng: np.random.Generator, tol: Tolerance) -> None:
    onb = riesz.VectorFamily.from_columns(random_unitary(rng, 6)[:, :4])
    a, b = riesz.frame_bounds(onb)
    report.check("riesz.orthonormal_bounds", max(abs(a - 1.0), abs(b - 1.0)), 1e-12)

    window = synthesis = r_factor = 0.0
    conditions = []
    for n in range(2, 33):
        fam = riesz.shifted_pair_family(n)
        cert = riesz.riesz_certify(fam)
        window = max(window, abs(cert.lower_bound_A - riesz.shifted_pair_lower_bound(n)))
        conditions.append(cert.condition)
        u = cert.synthesis_u
        synthesis = max(synthesis, float(np.max(np.abs(u.conj().T @ u - cert.gram))))
        r_factor = max(r_factor, cert.r_residual / float(np.linalg.norm(cert.gram, "fro")))
    growing = all(c1 < c2 for c1, c2 in zip(conditions, conditions[1:]))

    report.check("riesz.window_lower_bound", window, 1e-9)
    report.check("riesz.condition_growth", None, 0.0, passed=growing)
    report.check("riesz.synthesis_gram", synthesis, 1e-12)
    report.check("riesz.r_factor", r_factor, 1e-10)

    fam = riesz.VectorFamily.from_columns(random_matrix(rng, 8, 5))
    bound = riesz.bessel_constant(fam)
    worst = max(riesz.bessel_ratio(fam, random_vector(rng, 8)) for _ in range(200))
    report.check("riesz.bessel_sample_excess", worst - bound, 1e-10)
    _, q = hermitian_eig(riesz.frame_operator(fam))
    attained = abs(riesz.bessel_ratio(fam, q[:, -1]) - bound)
    report.check("riesz.bessel_attained", attained, 1e-8)


# ======================================================================
# CIRCLE
# ======================================================================
def _discrete_orthonormality_defect(q: int) -> float:
    window = np.arange(-((q - 1) // 2), (q - 1) // 2 + 1)
    rows = np.vstack([circle.char_sample(int(n), q).samples for n in window])
    return float(np.max(np.abs(rows @ rows.conj().T / q - identity(window.size))))


@suite("circle")
def circle_suite(report: RunReport, rng: np.random.Generator, tol: Tolerance) -> None:
    report.check(
        "circle.orthonormality",
        max(_discrete_orthonormality_defect(q) for q in (8, 64, 257)),
        1e-13,
    )

    q, band = 64, 5
    reconstruction = plancherel = covariance = 0.0
    rotation_exact = True
    for _ in range(20):
        c = random_vector(rng, 2 * band + 1).ravel()
        f = circle.partial_sum(
            circle.FourierSeries(coefficients=c, n_max=band, quadrature_order=q), q
        )
        series = circle.fourier_coefficients(f, band)
        back = circle.partial_sum(series, q)
        reconstruction = max(reconstruction, circle.mean_square_error(f, back))
        plancherel = max(plancherel, abs(circle.plancherel_gap(f, band)))

        j = int(rng.integers(0, q))
        rotated = circle.fourier_coefficients(circle.rotate(f, j), band)
        phases = np.array([circle.rotation_eigenvalue(n, j, q) for n in series.frequencies])
        covariance = max(
            covariance,
            float(np.max(np.abs(rotated.coefficients - phases * series.coefficients))),
        )
        rotation_exact &= circle.haar_integral(circle.rotate(f, j)) == circle.haar_integral(f)

    report.check("circle.band_limited_reconstruction", reconstruction, 1e-13)
    report.check("circle.plancherel", plancherel, 1e-12)
    report.check("circle.rotation_covariance", covariance, 1e-12)
    report.check("circle.haar_rotation_invariance", None, 0.0, passed=rotation_exact)

    saw = circle.sample_builtin("sawtooth", q)
    errors = [
        circle.mean_square_error(
            saw, circle.partial_sum(circle.fourier_coefficients(saw, n), q)
        )
        for n in (1, 2, 4, 8)
    ]
    decreasing = all(e1 > e2 for e1, e2 in zip(errors, errors[1:]))
    report.check("circle.sawtooth_decreasing", None, 0.0, passed=decreasing)