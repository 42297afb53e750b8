"""
Cross-module identity suite.

Every check draws its cases from a seeded generator, so a run is fully
determined by (vector index, seed, case count) and its JSON report is
byte-identical across runs.
"""
import cmath
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from tqdm import tqdm

from algebra.index import (
    AlphaTable,
    VectorIndex,
    alpha,
    alpha_table,
    derive_br_coefficients,
    generalized_binomial,
)
from algebra.norms import br_power_norm_check, norm_grid, norm_majorant
from algebra.operator import apply_br, apply_br_integral, apply_br_raw
from algebra.scalars import GaussianRational, Mode
from algebra.series import REvenSeries, add, multiply, scalar_mul
from dynamics.operator import ConvolutionOperator, apply
from dynamics.periodic import NEWTON_TOL, periodic_point_find, verify_periodic
from dynamics.symbol import symbol_eigenvalue
from harmonic.convolution import convolve, moment_convolution
from harmonic.density import density_residual
from harmonic.fourier import fourier, inverse_fourier, pair
from harmonic.functional import MomentFunctional
from harmonic.translation import product_formula_residual, translate_addition, translate_delsarte
from special.bessel import G_eval, j_eval, j_series, j_series_from_power

logger = logging.getLogger(__name__)

AlphaSource = Callable[[VectorIndex, int], AlphaTable]

DEFAULT_CASES = 20
DEFAULT_ORDER = 12
DEFAULT_FUNCTIONAL_ORDER = 8


@dataclass
class CheckResult:
    """Outcome of one identity over all its cases."""
    name: str
    cases: int = 0
    failures: int = 0
    worst: float = 0.0

    def record(self, ok: bool, residual: float = 0.0):
        self.cases += 1
        if not ok:
            self.failures += 1
        if residual > self.worst:
            self.worst = residual

    def to_dict(self) -> Dict:
        return {"name": self.name, "cases": self.cases, "failures": self.failures,
                "worst_residual": self.worst}


def corrupted_alpha_table(vi: VectorIndex, N: int) -> AlphaTable:
    """Fault-injection hook: alpha_table with one entry doubled."""
    table = alpha_table(vi, N)
    values = list(table.values)
    values[min(3, N)] *= 2
    return AlphaTable(vi, tuple(values))


FAULTS = {"alpha": corrupted_alpha_table}


class IdentitySuite:
    """
    Runs every algebraic and numerical identity of the toolkit.

    Args:
        vi: Vector index under test
        seed: Seed of the case generator
        cases: Random cases per check
        N: Truncation order of random series
        functional_order: Truncation order of random functionals
        alpha_source: Provider of alpha tables (replaced by fault injection)
    """

    def __init__(self, vi: VectorIndex, seed: int = 0, cases: int = DEFAULT_CASES, N: int = DEFAULT_ORDER,
                 alpha_source: Optional[AlphaSource] = None,
                 functional_order: int = DEFAULT_FUNCTIONAL_ORDER):
        if cases < 1 or N < 1 or functional_order < 0:
            raise ValueError(f"need cases >= 1, N >= 1 and functional_order >= 0, "
                             f"got {cases}, {N}, {functional_order}")
        self.vi = vi
        self.seed = seed
        self.cases = cases
        self.N = N
        self.functional_order = functional_order
        self.alpha_source = alpha_source or alpha_table
        self.rng = random.Random(seed)

    # Case generators

    def rational(self) -> Fraction:
        return Fraction(self.rng.randint(-9, 9), self.rng.randint(1, 9))

    def gaussian(self):
        return GaussianRational(self.rational(), self.rational())

    def series(self, N: Optional[int] = None) -> REvenSeries:
        N = self.N if N is None else N
        return REvenSeries(self.vi, tuple(self.gaussian() for _ in range(N + 1)), Mode.EXACT)

    def functional(self, N: Optional[int] = None) -> MomentFunctional:
        N = self.functional_order if N is None else N
        return MomentFunctional(self.vi, tuple(self.gaussian() for _ in range(N + 1)), Mode.EXACT)

    def point(self, radius: float) -> complex:
        return cmath.rect(self.rng.uniform(0, radius), self.rng.uniform(0, 2 * math.pi))

    # Checks

    def check_alpha(self) -> CheckResult:
        result = CheckResult("alpha_table")
        result.record(not self.alpha_source(self.vi, 64).violations())
        for r in (2, 3, 4, 5):
            vi = VectorIndex.derivative(r)
            table = self.alpha_source(vi, 30)
            exact = all(value == math.factorial(r * n) for n, value in enumerate(table.values))
            zero_a = all(a == 0 for a in derive_br_coefficients(vi).a)
            result.record(exact and zero_a)
        return result

    def check_br_coefficients(self) -> CheckResult:
        result = CheckResult("br_coefficients")
        br = derive_br_coefficients(self.vi)
        r = self.vi.r
        for m in range(r, 3 * r):
            result.record(br.identity_holds(m))
        result.record(br.M >= 1)
        return result

    def check_binomial(self) -> CheckResult:
        result = CheckResult("generalized_binomial")
        for _ in range(self.cases):
            n = self.rng.randint(0, 20)
            k = self.rng.randint(0, n)
            result.record(generalized_binomial(self.vi, n, k) == generalized_binomial(self.vi, n, n - k))
        return result

    def check_br_paths(self) -> CheckResult:
        result = CheckResult("apply_br_cross_path")
        for _ in range(self.cases):
            u = self.series()
            result.record(apply_br(u) == apply_br_raw(u))
        return result

    def check_linearity(self) -> CheckResult:
        result = CheckResult("apply_br_linearity")
        for _ in range(self.cases):
            u, v = self.series(), self.series()
            a, b = self.gaussian(), self.gaussian()
            lhs = apply_br(add(scalar_mul(a, u), scalar_mul(b, v)))
            rhs = add(scalar_mul(a, apply_br(u)), scalar_mul(b, apply_br(v)))
            result.record(lhs == rhs)
        return result

    def check_eigen_relation(self) -> CheckResult:
        result = CheckResult("eigen_relation")
        for _ in range(self.cases):
            x = self.rational()
            lhs = apply_br(j_series_from_power(self.vi, x, self.N))
            rhs = scalar_mul(-x, j_series_from_power(self.vi, x, self.N - 1))
            result.record(lhs == rhs)
        return result

    def check_br_integral(self) -> CheckResult:
        result = CheckResult("apply_br_integral")
        for _ in range(self.cases):
            degree = self.rng.randint(1, 20)
            u = REvenSeries(self.vi, tuple(complex(self.rng.uniform(-1, 1), self.rng.uniform(-1, 1))
                                           for _ in range(degree + 1)), Mode.FLOAT)
            z = self.point(5.0)
            reference = apply_br(u)
            expected = reference.evaluate(z)
            quad = apply_br_integral(u, z)
            scale = max(1.0, norm_majorant(reference, abs(z) or 1.0))
            error = abs(quad.value - expected) / scale
            result.record(error <= 1e-9, error)
        return result

    def check_classical(self) -> CheckResult:
        result = CheckResult("classical_reductions")
        cos_index = VectorIndex(2, (Fraction(-1, 2),))
        sinc_index = VectorIndex(2, (Fraction(1, 2),))
        for _ in range(self.cases):
            z = self.point(5.0)
            value, _, _ = j_eval(cos_index, z, 5e-13)
            error = abs(value - cmath.cos(z))
            result.record(error <= 1e-12, error)
            if z != 0:
                value, _, _ = j_eval(sinc_index, z, 5e-13)
                error = abs(value - cmath.sin(z) / z)
                result.record(error <= 1e-12, error)
        return result

    def check_translation(self) -> CheckResult:
        result = CheckResult("translation")
        for _ in range(self.cases):
            u = self.series()
            z = self.rational()
            result.record(translate_delsarte(u, z) == translate_addition(u, z))
            result.record(translate_delsarte(u, 0) == u)
            result.record(apply_br(translate_delsarte(u, z)) == translate_delsarte(apply_br(u), z))
            w = self.rational()
            result.record(translate_delsarte(translate_delsarte(u, w), z)
                          == translate_delsarte(translate_delsarte(u, z), w))
            uf = u.to_float()
            zf, wf = self.point(2.0), self.point(2.0)
            a = translate_delsarte(uf, zf).evaluate(wf)
            b = translate_delsarte(uf, wf).evaluate(zf)
            error = abs(a - b) / max(1.0, abs(a))
            result.record(error <= 1e-11, error)
        return result

    def check_product_formula(self) -> CheckResult:
        result = CheckResult("product_formula")
        for _ in range(self.cases):
            check = product_formula_residual(self.vi, self.point(2.0), self.point(2.0), self.point(2.0))
            result.record(check.passed, check.residual)
        return result

    def check_convolution_algebra(self) -> CheckResult:
        result = CheckResult("convolution_algebra")
        delta = MomentFunctional.delta(self.vi, self.functional_order)
        for _ in range(self.cases):
            T, S, U = self.functional(), self.functional(), self.functional()
            result.record(moment_convolution(T, S) == moment_convolution(S, T))
            result.record(moment_convolution(moment_convolution(T, S), U)
                          == moment_convolution(T, moment_convolution(S, U)))
            result.record(moment_convolution(delta, S) == S)
            lhs = moment_convolution(T, S).apply_br()
            result.record(lhs == moment_convolution(T.apply_br(), S))
            result.record(lhs == moment_convolution(T, S.apply_br()))
        return result

    def check_fourier(self) -> CheckResult:
        result = CheckResult("fourier")
        for _ in range(self.cases):
            T, S = self.functional(), self.functional()
            result.record(inverse_fourier(fourier(T)) == T)
            v = fourier(S)
            result.record(fourier(inverse_fourier(v)) == v)
            product = multiply(fourier(T), fourier(S)).resized(T.N)
            result.record(fourier(moment_convolution(T, S)) == product)
            a = self.rational()
            result.record(fourier(MomentFunctional.delta_at(self.vi, a, self.N)).coeffs
                          == j_series(self.vi, a, self.N).coeffs)
        return result

    def check_norm_inequality(self) -> CheckResult:
        result = CheckResult("br_power_norm")
        for _ in range(self.cases):
            u = self.series().to_float()
            n = self.rng.randint(1, 5)
            R = self.rng.choice((0.5, 1.0, 2.0))
            report = br_power_norm_check(u, R, n)
            result.record(report.passed, report.lhs / report.rhs if report.rhs else 0.0)
        return result

    def check_operators(self) -> CheckResult:
        result = CheckResult("convolution_operators")
        for _ in range(self.cases):
            L1 = ConvolutionOperator.from_symbol(self.vi, [self.gaussian() for _ in range(4)])
            L2 = ConvolutionOperator.from_symbol(self.vi, [self.gaussian() for _ in range(3)])
            u = self.series()
            result.record(apply(L1, apply(L2, u)) == apply(L2, apply(L1, u)))
            z = self.rational()
            result.record(apply(L1, translate_delsarte(u, z)) == translate_delsarte(apply(L1, u), z))
            result.record(apply(L1, apply_br(u)) == apply_br(apply(L1, u)))
            T = self.functional(self.N)
            result.record(ConvolutionOperator.from_functional(T).to_functional() == T)
            result.record(apply(ConvolutionOperator.from_functional(T), u) == convolve(T, u))
        return result

    def check_special_bounds(self) -> CheckResult:
        result = CheckResult("special_function_bounds")
        rotation = self.vi.eigen_rotation
        for _ in range(self.cases):
            z = self.point(5.0)
            x = abs(z)
            G = G_eval(self.vi, x)
            value, bound, _ = j_eval(self.vi, z, 1e-10)
            result.record(abs(value) <= G * (1 + 1e-12) + bound)
            result.record(G <= math.exp(x) * (1 + 1e-12))
            # G_gamma(x) = j_gamma(e^{i pi / r} x)
            rotated, _, _ = j_eval(self.vi, rotation * x, 1e-10)
            error = abs(rotated - G) / max(1.0, G)
            result.record(error <= 1e-9, error)
            used = [j_eval(self.vi, z, tol)[2] for tol in (1e-4, 1e-8, 1e-12)]
            result.record(used == sorted(used))
        return result

    def check_pairing_fourier(self) -> CheckResult:
        result = CheckResult("pairing_fourier")
        for _ in range(self.cases):
            T = self.functional()
            lam = self.rational()
            # F(T)(lam) = <T, j_gamma(lam .)>
            result.record(pair(T, j_series(self.vi, lam, T.N)) == fourier(T).evaluate_exact(lam))
            S = self.functional()
            result.record((fourier(T).coeffs == fourier(S).coeffs) == (T.moments == S.moments))
            moments = list(T.moments)
            k = self.rng.randint(0, T.N)
            moments[k] = moments[k] + GaussianRational(1, 1)
            U = MomentFunctional(self.vi, tuple(moments), Mode.EXACT)
            result.record(fourier(U).coeffs != fourier(T).coeffs)
        return result

    def check_density_refinement(self) -> CheckResult:
        result = CheckResult("density_refinement")
        for _ in range(self.cases):
            target = self.series(4).to_float()
            scale = max(1.0, norm_majorant(target, 1.0))
            nodes = [self.point(1.5) for _ in range(12)]
            previous = math.inf
            for k in (4, 8, 12):
                fit = density_residual(self.vi, nodes[:k], target, R=1.0, m=64)
                result.record(fit.rms <= previous + 1e-9 * scale, fit.rms / scale)
                previous = fit.rms
        return result

    def check_shift_law(self) -> CheckResult:
        result = CheckResult("shift_law")
        for _ in range(self.cases):
            n = self.rng.randint(1, self.N)
            image = apply_br(REvenSeries.basis(self.vi, n, self.N))
            result.record(image.coeffs == REvenSeries.basis(self.vi, n - 1, self.N - 1).coeffs)
            result.record(apply_br(REvenSeries.basis(self.vi, 0, self.N)).is_zero())
            u = self.series()
            result.record(apply_br(u).coeffs == u.coeffs[1:])
        return result

    def check_grid_norm(self) -> CheckResult:
        result = CheckResult("grid_norm_bounds")
        for _ in range(self.cases):
            u = self.series().to_float()
            R = self.rng.choice((0.5, 1.0, 2.0))
            m = self.rng.randint(8, 300)
            lower, upper = norm_grid(u, R, m), norm_majorant(u, R)
            result.record(lower <= upper * (1 + 1e-12), lower / upper if upper else 0.0)
            result.record(lower <= norm_grid(u, R, 2 * m))
        return result

    def check_symbol_eigen(self) -> CheckResult:
        result = CheckResult("symbol_eigen_relation")
        for _ in range(self.cases):
            K = min(3, self.N)
            L = ConvolutionOperator.from_symbol(self.vi, [self.gaussian() for _ in range(K + 1)])
            x = self.rational()
            # Psi(lam) for any lam with lam^r = x
            psi = sum((b * (-x) ** n / alpha(self.vi, n) for n, b in enumerate(L.symbol)), 0)
            lhs = apply(L, j_series_from_power(self.vi, x, self.N)).resized(self.N - K)
            rhs = scalar_mul(psi, j_series_from_power(self.vi, x, self.N - K))
            result.record(lhs.coeffs == rhs.coeffs)
            lam = complex(x) ** (1.0 / self.vi.r)
            scale = max(1.0, math.fsum(abs(complex(b)) * abs(x) ** n / float(alpha(self.vi, n))
                                       for n, b in enumerate(map(complex, L.symbol))))
            error = abs(symbol_eigenvalue(L, lam) - complex(psi)) / scale
            result.record(error <= 1e-12, error)
        return result

    def check_periodic_points(self) -> CheckResult:
        result = CheckResult("periodic_points")
        L = ConvolutionOperator.hyper_bessel(self.vi)
        for _ in range(self.cases):
            alpha_ = self.rng.choice((Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3)))
            seeds = [cmath.rect(self.rng.uniform(0.5, 2.0), self.rng.uniform(0, 2 * math.pi)) for _ in range(4)]
            points = periodic_point_find(L, alpha_, seeds)
            result.record(bool(points))
            for point in points:
                # rotation into the canonical sector may add rounding
                result.record(point.residual <= 100 * NEWTON_TOL, point.residual)
                residual = verify_periodic(L, point.lam, point.period, N=self.N)
                result.record(residual <= 1e-9, residual)
        return result

    def checks(self) -> List[Callable[[], CheckResult]]:
        return [
            self.check_alpha,
            self.check_br_coefficients,
            self.check_binomial,
            self.check_br_paths,
            self.check_linearity,
            self.check_eigen_relation,
            self.check_br_integral,
            self.check_classical,
            self.check_translation,
            self.check_product_formula,
            self.check_convolution_algebra,
            self.check_fourier,
            self.check_norm_inequality,
            self.check_operators,
            self.check_special_bounds,
            self.check_pairing_fourier,
            self.check_density_refinement,
            self.check_shift_law,
            self.check_grid_norm,
            self.check_symbol_eigen,
            self.check_periodic_points,
        ]

    def run(self) -> Tuple[List[CheckResult], bool]:
        """Run every check; returns the results and whether all passed."""
        results = []
        for check in tqdm(self.checks(), desc="Identities", disable=None):
            outcome = check()
            if outcome.failures:
                logger.warning("Identity %s failed %d of %d cases (worst %.3e)",
                               outcome.name, outcome.failures, outcome.cases, outcome.worst)
            results.append(outcome)
        return results, all(r.failures == 0 for r in results)
