"""Verification suites: each suite is an ordered list of exact checks.

A check is a (id, source reference, expected, compute) tuple. compute() is run
under a timer; an exception inside it becomes a failed check carrying the
exception text, and the suite carries on with the next check. Heavy checks
are reported as skipped unless the run asks for them.
"""

from __future__ import annotations

import logging
import random
import time
from fractions import Fraction
from typing import Any, Callable

from . import characters as ch
from . import cyclo, jacobian, linalg, periods, psl2
from .config import RunOptions, Suite
from .cyclo import Cyclotomic
from .report import CheckResult, CheckStatus, Report, SuiteReport

logger = logging.getLogger("adlercheck")

SEED = 19


# ── Rendering of exact values ───────────────────────────────────────


def _is_scalar(value: Any) -> bool:
    return isinstance(value, (int, Fraction, Cyclotomic)) and not isinstance(value, bool)


def render_values(expected: Any, actual: Any) -> tuple[str, str]:
    """Canonical strings; equal exact values always render identically."""
    if _is_scalar(expected) and _is_scalar(actual):
        return cyclo.render_pair(expected, actual)
    if isinstance(expected, (list, tuple)) and isinstance(actual, (list, tuple)) \
            and len(expected) == len(actual):
        pairs = [render_values(e, a) for e, a in zip(expected, actual)]
        return "[" + ", ".join(p[0] for p in pairs) + "]", "[" + ", ".join(p[1] for p in pairs) + "]"
    return render(expected), render(actual)


def render(value: Any) -> str:
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {render(value[k])}" for k in sorted(value, key=str)) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(render(v) for v in value) + "]"
    return str(value)


class SuiteRunner:
    """Collects the checks of one suite."""

    def __init__(self, suite: Suite, options: RunOptions) -> None:
        self.suite = suite
        self.options = options
        self.report = SuiteReport(name=suite.value)

    def check(self, id: str, paper_ref: str, expected: Any, compute: Callable[[], Any],
              heavy: bool = False) -> CheckResult:
        if heavy and not self.options.heavy:
            result = CheckResult(id=id, suite=self.suite.value, paper_ref=paper_ref,
                                 status=CheckStatus.SKIPPED, actual="needs --heavy")
            self.report.checks.append(result)
            return result
        start = time.perf_counter()
        try:
            exp_text, act_text = render_values(expected, compute())
        except Exception as e:
            logger.error(f"Check {id} raised {type(e).__name__}: {e}")
            exp_text, act_text = render(expected), f"{type(e).__name__}: {e}"
        duration = (time.perf_counter() - start) * 1000
        result = CheckResult.compare(id, self.suite.value, paper_ref, exp_text, act_text, duration)
        if result.status is CheckStatus.FAIL:
            logger.warning(f"FAIL {id}: expected {exp_text}, got {act_text}")
        else:
            logger.debug(f"pass {id} ({duration:.0f} ms)")
        self.report.checks.append(result)
        return result

    def row(self, data: dict[str, Any]) -> None:
        self.report.rows.append(data)


# ── arithmetic ──────────────────────────────────────────────────────


def _random_cyclotomic(rng: random.Random, n: int) -> Cyclotomic:
    return Cyclotomic.from_raw(n, {rng.randrange(n): Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                                   for _ in range(4)})


def field_axioms_hold(rng: random.Random, trials: int = 20) -> bool:
    for _ in range(trials):
        n = rng.choice((5, 9, 10, 12, 19))
        a, b, c = (_random_cyclotomic(rng, n) for _ in range(3))
        if a * (b + c) != a * b + a * c or a + b != b + a or (a * b) * c != a * (b * c):
            return False
        if a and a * a.inverse() != 1:
            return False
        if a.conj().conj() != a:
            return False
    return True


def pfaffian_matches_determinant(rng: random.Random, trials: int = 5) -> bool:
    for _ in range(trials):
        n = 2 * rng.randint(1, 4)
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                m[i][j] = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
                m[j][i] = -m[i][j]
        if Fraction(linalg.pfaffian(m)) ** 2 != linalg.determinant(m):
            return False
    return True


def hnf_preserves_determinant(rng: random.Random, trials: int = 5) -> bool:
    for _ in range(trials):
        m = [[rng.randint(-20, 20) for _ in range(6)] for _ in range(6)]
        det = linalg.determinant(m)
        if not det:
            continue
        h, u = linalg.hnf(m)
        if abs(linalg.determinant(h)) != abs(det) or linalg.matmul(u, m) != h:
            return False
    return True


def arithmetic_suite(run: SuiteRunner) -> None:
    nu = cyclo.gauss_nu()
    run.check("zeta5-root-sum", "vanishing sum of primitive 5th roots", -1,
              lambda: sum((cyclo.zeta(5, k) for k in range(2, 5)), cyclo.zeta(5, 1)))
    run.check("nu-norm", "nu = (-1 + i sqrt19)/2", 5, lambda: nu * nu.conj())
    run.check("sqrt-minus-19", "1 + 2nu = i sqrt19", -19, lambda: cyclo.sqrt_minus_19() ** 2)
    run.check("nu-conjugate", "conj(nu) = -1 - nu", -1 - nu, lambda: cyclo.conj(nu))
    run.check("nu-minimal-polynomial", "nu^2 + nu + 5 = 0", 0, lambda: nu * nu + nu + 5)
    run.check("quadratic-residues", "exponents of v_k", [1, 4, 9, 16, 6, 17, 11, 7, 5],
              lambda: list(cyclo.quadratic_residues(19)))
    run.check("zeta7-real-part-irrational", "try_rational", None,
              lambda: cyclo.try_rational(cyclo.zeta(7) + cyclo.zeta(7).conj()))
    run.check("nu-trace", "nu + conj(nu) = -1", -1, lambda: cyclo.try_integer(nu + nu.conj()))
    run.check("nu-residue-mod-19", "Z[nu]/(1+2nu) = F_19", [0, 0],
              lambda: [(periods.NU_MOD ** 2 + periods.NU_MOD + 5) % 19, (1 + 2 * periods.NU_MOD) % 19])
    run.check("sqrt19-squared", "sqrt19 = -i(1+2nu) in Q(zeta_76)", 19, lambda: periods.sqrt_19() ** 2)
    rng = random.Random(SEED)
    run.check("field-axioms-random", "property suite", True, lambda: field_axioms_hold(rng))
    run.check("pfaffian-squared-is-determinant", "property suite", True,
              lambda: pfaffian_matches_determinant(rng))
    run.check("hnf-determinant-random", "property suite", True, lambda: hnf_preserves_determinant(rng))


# ── group ───────────────────────────────────────────────────────────


def _sigma_cycle() -> list[int]:
    perm = psl2.s_matrix().perm
    cycle, k = [1], perm[0]
    while k != 0:
        cycle.append(k + 1)
        k = perm[k]
    return cycle


def words_round_trip(rep: psl2.ProjectiveRep, rng: random.Random, samples: int = 25) -> bool:
    elements = psl2.all_elements()
    for g in rng.sample(elements, samples):
        if psl2.evaluate_word(psl2.word_for(g, rep.mu), rep.mu) != g:
            return False
    return True


def group_suite(run: SuiteRunner) -> None:
    g_data = psl2.enumerate_group("G")
    h_data = psl2.enumerate_group("H")
    run.check("group-order", "|PSL2(F19)| = 3420", 3420, lambda: g_data.order)
    run.check("class-count", "12 conjugacy classes", 12, lambda: len(g_data.classes))
    run.check("class-sizes", "class list of PSL2(F19)",
              [1, 180, 180, 380, 380, 380, 380, 342, 342, 342, 342, 171], lambda: g_data.sizes)
    run.check("h-order", "|H| = 171", 171, lambda: h_data.order)
    run.check("h-class-sizes", "the 11 classes of H", [1] + [19] * 8 + [9, 9], lambda: h_data.sizes)
    run.check("power-class-w1-squared", "w1^2 in {w2}", "w2",
              lambda: g_data.names[psl2.power_class(g_data, g_data.names.index("w1"), 2)])
    run.check("power-class-y-fifth", "y^5 is the involution class", "y5",
              lambda: g_data.names[psl2.power_class(g_data, g_data.names.index("y"), 5)])
    run.check("borel-conjugates", "H stabilises a point of P1(F19)", 20,
              lambda: len(psl2.borel_conjugates()))
    run.check("sigma-cycle", "sigma: e_k -> e_|6k|", [1, 6, 2, 7, 4, 5, 8, 9, 3], _sigma_cycle)
    run.check("sigma-conjugates-tau", "S T S^-1 = T^9", True,
              lambda: psl2.s_matrix() @ psl2.t_matrix() @ psl2.s_matrix().inverse() == psl2.t_matrix() ** 9)

    rep = psl2.build_rep()
    run.row({"mu_variant": rep.variant, "mu_image": str(rep.mu),
             "documented_image": str(psl2.DOCUMENTED_MU), "certificate": rep.certificate})
    run.check("mu-involution", "mu is the order 2 automorphism", True,
              lambda: psl2.dense_mul(rep.M, rep.M) == psl2.dense_identity())
    w9 = ch.table_g().character("W9")
    run.check("trace-character-w9", "W9 row of the character table", list(w9.values),
              lambda: psl2.trace_character(rep, "G"))
    run.check("rep-decomposition", "the 9-dimensional representation is W9", {"W9": 1},
              lambda: ch.decompose(ch.rep_character(rep)))
    rng = random.Random(SEED)
    run.check("word-round-trip", "words over tau, sigma, mu", True, lambda: words_round_trip(rep, rng))
    run.check("identity-word", "empty word", [], lambda: psl2.word_for(psl2.GroupElement.identity(), rep.mu))
    run.check("homomorphism-certificate", "3 x 3420 Cayley-graph edges", 3 * 3420,
              lambda: psl2.certify_full(rep), heavy=True)


# ── characters ──────────────────────────────────────────────────────

SYM3_W9 = {"T1": 1, "W9bar": 1, "W18_1": 1, "W18_3": 1, "W20_1": 1, "W20_2": 1, "W20_3": 2,
           "W20_4": 1, "W19": 1}
I3 = {"T1": 1, "W20_1": 1, "W20_2": 1, "W20_3": 1, "W20_4": 1}
H43_DUAL = {"W9bar": 1, "W18_1": 1, "W18_3": 1, "W19": 1, "W20_3": 1}
R3_ON_H = {"V0": 1, "V3": 1, "V6": 1, "V9": 4, "V9bar": 5}


def characters_suite(run: SuiteRunner) -> None:
    g, h = ch.table_g(), ch.table_h()
    nu = cyclo.gauss_nu()
    w9, w9bar = g.character("W9"), g.character("W9bar")
    run.check("orthogonality-g", "character table of PSL2(F19)", [], lambda: ch.orthogonality_defects(g))
    run.check("orthogonality-h", "character table of H", [], lambda: ch.orthogonality_defects(h))
    run.check("inner-w9-w9", "irreducibility", 1, lambda: ch.inner_product(w9, w9))
    run.check("inner-w9-w9bar", "orthogonality", 0, lambda: ch.inner_product(w9, w9bar))
    run.check("inner-sym3-w20_3", "(W20^3)^2 in Sym^3 W9", 2,
              lambda: ch.inner_product(ch.sym3(w9), g.character("W20_3")))
    run.check("sym3-values", "trace vector of Sym^3 W9",
              [165, 3 - nu, 3 - nu.conj(), 0, 0, 3, 0, 0, 0, 0, 0, 5], lambda: list(ch.sym3(w9).values))
    run.check("sym3-degree", "dim Sym^3 C^9", ch.sym3_dimension(), lambda: ch.sym3(w9).degree)
    run.check("prop8-decomposition", "Sym^3 W9 decomposition", SYM3_W9,
              lambda: ch.decompose(ch.cubic_forms_character()))
    run.check("i3-decomposition", "I_3 = W9 (x) W9bar", I3, lambda: ch.decompose(ch.jacobian_ideal_character()))
    run.check("h43-decomposition", "H^{4,3}* decomposition", H43_DUAL,
              lambda: ch.decompose(ch.middle_cohomology_character()))
    run.check("dimension-ledger", "165 = 84 + 81", [165, 84, 81],
              lambda: [ch.cubic_forms_character().degree, ch.middle_cohomology_character().degree,
                       ch.jacobian_ideal_character().degree])
    restrictions = {
        "W20_1": {"V1": 1, "V8": 1, "V9": 1, "V9bar": 1},
        "W18_3": {"V9": 1, "V9bar": 1},
        "W19": {"V0": 1, "V9": 1, "V9bar": 1},
        "W20_3": {"V3": 1, "V6": 1, "V9": 1, "V9bar": 1},
    }
    for name, expected in restrictions.items():
        run.check(f"restrict-{name}", "branching to H", expected,
                  lambda name=name: ch.decompose(ch.restrict_to_h(g.character(name))))
    run.row({"unlabelled_w20_read_as": "W20_3",
             "W20_1_on_h": ch.decompose(ch.restrict_to_h(g.character("W20_1"))),
             "W20_3_on_h": ch.decompose(ch.restrict_to_h(g.character("W20_3")))})
    run.check("restrict-h43", "H-character of the middle cohomology", R3_ON_H,
              lambda: ch.decompose(ch.restrict_to_h(ch.middle_cohomology_character())))
    rows = ch.integrality_check_cor10()
    for row in rows:
        run.row({"chi": row.name, "integral": row.integral, "degree": row.degree,
                 "subtorus_dim": row.subtorus_dim})
    run.check("galois-sum-integrality", "chi_0 .. chi_4 are integer valued", [True] * 5,
              lambda: [r.integral for r in rows])
    run.check("galois-sum-degrees", "degrees of chi_0 .. chi_4", [1, 18, 72, 19, 80], lambda: [r.degree for r in rows])
    run.check("galois-sum-subtorus-dims", "E x A9 x A36 x A19 x A20", [1, 9, 36, 19, 20],
              lambda: [r.subtorus_dim for r in rows])
    run.check("projector-trace-w20_3", "trace of psi on W9 (x) W9bar", 20,
              lambda: ch.projector_trace("W20_3", ch.jacobian_ideal_character()))
    rep = psl2.build_rep()
    run.check("projector-w9-identity", "W9 is W9-isotypic", True,
              lambda: ch.is_identity(ch.apply_projector(rep, "W9")), heavy=True)
    run.check("projector-w9bar-zero", "W9bar does not occur in W9", 0,
              lambda: ch.projector_rank(ch.apply_projector(rep, "W9bar")), heavy=True)


# ── jacobian ────────────────────────────────────────────────────────


def jacobian_suite(run: SuiteRunner) -> None:
    f = jacobian.pencil(-2)
    klein = jacobian.pencil(0)
    rep = psl2.build_rep()
    run.check("klein-monomials", "X_0 is the Klein cubic", 9, lambda: len(klein.terms))
    run.check("adler-monomials", "the invariant cubic", 12, lambda: len(f.terms))
    x4_x4_x5 = jacobian.Poly9.monomial((4, 4, 5)).terms
    exps = next(iter(x4_x4_x5))
    lambdas = sorted(set(run.options.lambdas) | {Fraction(-2)})
    run.check("coefficient-x4^2x5", "x4^2 x5 has coefficient 1 for every lambda", [1] * len(lambdas),
              lambda: [jacobian.pencil(lam).coefficient(exps) for lam in lambdas])
    expected_partial = (jacobian.Poly9.monomial((1, 6), 2) + jacobian.Poly9.monomial((3, 3))
                        + jacobian.Poly9.monomial((7, 8), -2))
    run.check("partial-x1", "df/dx1 = 2x1x6 + x3^2 - 2x7x8", True,
              lambda: jacobian.partial(f, 1) == expected_partial)
    run.check("euler-identity", "sum x_j df/dx_j = 3f", True, lambda: sum(
        (jacobian.Poly9.monomial((j,)) * jacobian.partial(f, j) for j in range(2, 10)),
        jacobian.Poly9.monomial((1,)) * jacobian.partial(f, 1)) == f.scale(3))
    generators = {"tau": rep.T.to_dense(), "sigma": rep.S.to_dense(), "mu": rep.M}
    for name, g in generators.items():
        run.check(f"invariance-{name}", "f_-2 is PSL2(F19)-invariant", 1,
                  lambda g=g: jacobian.invariance_scalar(g, f))
    run.check("klein-not-mu-invariant", "uniqueness of the invariant cubic", None,
              lambda: jacobian.invariance_scalar(rep.M, klein))
    run.check("graded-dims", "Hilbert series (1+t)^9", [1, 9, 36, 84],
              lambda: [jacobian.graded_dim(f, d) for d in range(4)])
    run.check("graded-dim-4", "dim R_4 = 126", 126, lambda: jacobian.graded_dim(f, 4), heavy=True)
    run.check("hodge-numbers", "h^{7,0}, h^{6,1}, h^{5,2}, h^{4,3}", [0, 0, 1, 84],
              lambda: [jacobian.hodge_number(f, q) for q in range(4)])
    run.check("hodge-numbers-all", "h^{7-q,q} for q = 0..7 on a smooth cubic", [0, 0, 1, 84, 84, 1, 0, 0],
              lambda: [jacobian.hodge_number(f, q, prime=run.options.primes[0]) for q in range(8)], heavy=True)
    run.check("ideal-cubic-dim", "dim I_3 = 81", 81, lambda: jacobian.ideal_cubic_dim(f))
    run.check("i2-character", "I_2 is W9bar", {"W9bar": 1},
              lambda: ch.decompose(jacobian.i2_character(f, rep, "G")))
    run.check("r3-decomposition", "R_3 as a PSL2(F19)-module", H43_DUAL,
              lambda: ch.decompose(jacobian.character_on_r3(f, rep, "G")))
    p = run.options.primes[0]
    run.check("smooth-adler", f"R_10 = 0 mod {p}", jacobian.CERTIFIED,
              lambda: jacobian.smooth_certificate_mod_p(f, p), heavy=True)
    run.check("smooth-klein", f"R_10 = 0 mod {p}", jacobian.CERTIFIED,
              lambda: jacobian.smooth_certificate_mod_p(klein, p), heavy=True)
    run.check("singular-cube", "a cube of one variable is singular", jacobian.INCONCLUSIVE,
              lambda: jacobian.smooth_certificate_mod_p(jacobian.Poly9.monomial((1, 1, 1)), p), heavy=True)


# ── pencil ──────────────────────────────────────────────────────────


def pencil_suite(run: SuiteRunner) -> None:
    rep = psl2.build_rep()
    opts = run.options
    rows = jacobian.pencil_scan(opts.lambdas, opts.primes, rep, heavy=opts.heavy)
    for row in rows:
        run.row(row.to_dict())
        run.check(f"pencil-r3-dim[{row.lam}]", "H^{4,3}(X_lam) = R_3", 84, lambda row=row: row.dims[3])
        run.check(f"pencil-h-decomposition[{row.lam}]", "H acts alike on every X_lam", R3_ON_H,
                  lambda row=row: row.h_decomposition if row.h_decomposition is not None else row.note)
        if opts.heavy:
            run.check(f"pencil-smooth[{row.lam}]", "R_10 = 0 modulo a prime", jacobian.CERTIFIED,
                      lambda row=row: row.status)


# ── lattice ─────────────────────────────────────────────────────────


def lattice_suite(run: SuiteRunner) -> None:
    nu = cyclo.gauss_nu()
    v = periods.build_v
    tau = psl2.t_matrix().to_dense()
    one_minus_tau = [[(1 if i == j else 0) - tau[i][j] for j in range(9)] for i in range(9)]

    def wprime_from_tau() -> periods.PeriodVector:
        z = v(0)
        for _ in range(5):
            z = periods.apply(one_minus_tau, z)
        return tuple(x * periods.inverse_g() for x in z)

    run.check("v0", "v_0 = e_1 + ... + e_9", [1] * 9, lambda: list(v(0)))
    run.check("wprime0", "w'_0 = (1 - tau)^5 v_0 / (1+2nu)", list(periods.build_wprime(0)),
              lambda: list(wprime_from_tau()))
    run.check("ell0-tau-v0", "nu = l_0(tau v_0)", nu, lambda: periods.ell(0, v(1)))
    run.check("nu-v0-relation", "nu v_0 = sum of v_{k^2}", True, periods.nu_relation_holds)
    run.row({"printed_nu_v0_sum_v1_to_v9": periods.nu_relation_holds(squares=False)})
    run.check("v9-expansion", "v_9 over Z[nu]", periods.printed_v9_expansion(), periods.v9_expansion)
    printed_diff = periods.printed_v9_expansion()
    printed_diff[8] = nu - 1
    run.check("v9-minus-v8-expansion", "v_9 - v_8 over Z[nu]", printed_diff,
              lambda: periods.v_coordinates(tuple(a - b for a, b in zip(v(9), v(8)))))
    run.check("ell-integrality", "l_m on Lambda_8 generators", True, lambda: all(
        cyclo.in_z_nu(periods.ell(m, z)) is not None
        for z in periods.lambda8_generators() for m in range(9)))
    run.check("lambda0-rank", "Lambda_0 = R_0", 18, lambda: periods.lattice_lambda0().rank)
    run.check("lambda8-index", "[Lambda_8 : Lambda_0] = 19^8", 19 ** 8,
              lambda: periods.lattice_lambda0().index_in(periods.lattice_lambda8()))
    run.check("lambda8-tau-stable", "tau stabilises Lambda_8", True,
              lambda: periods.stability(tau, periods.lattice_lambda8()))

    flag = periods.flag_quotient()
    run.check("tau-hat-jordan", "matrix of tau-hat in w_1 .. w_8", periods.jordan_block(), lambda: flag.tau_w)
    run.check("tau-hat-stable-subspaces", "W_0 < ... < W_8", 9, lambda: flag.stable_subspace_count)
    run.check("tower-indices", "Lambda_j < Lambda_{j+1}", [19] * 8, periods.tower_indices)
    run.check("lambda4-explicit-basis", "explicit H_1(A, Z)", True,
              lambda: periods.lattice_lambda(4) == periods.h1_lattice())

    run.check("polarization-v1-v0", "E(v_1, v_0) = a", 1, lambda: periods.polarization_eval(v(1), v(0)))
    run.check("polarization-alternating", "E(x, x) = 0", 0, lambda: periods.polarization_eval(v(3), v(3)))
    e1 = periods.unit_vector(1)
    run.check("polarization-e1-nu-e1", "E on Z[nu] e_1", -1,
              lambda: periods.polarization_eval(e1, tuple(nu * x for x in e1)))
    run.check("prefactor", "c_1(Theta) normalisation", {"2/sqrt19": False, "i/sqrt19": True},
              periods.normalisation_check)

    rep = psl2.build_rep()
    rows = periods.lattice_rows(rep)
    for row in rows:
        run.row(row.to_dict())
    run.check("pfaffian-squares", "P_j^2 = 19^(8-2j)",
              [Fraction(19 ** 8, 19 ** (2 * j)) for j in range(9)], lambda: [r.pfaffian_squared for r in rows])
    run.check("pfaffian-lambda4", "Pf(H_1(A, Z)) = 1", 1, lambda: periods.gram_pfaffian(periods.lattice_lambda(4)))
    run.check("gram-integral-lambda4", "M_Lambda4 has integer entries", True, lambda: rows[4].integral)
    run.check("nu-stable-tower", "each Lambda_j is a Z[nu]-module", [True] * 9, lambda: [r.nu_stable for r in rows])
    run.check("tau-stable-tower", "tau preserves every Lambda_j", [True] * 9, lambda: [r.stable["tau"] for r in rows])
    for name in ("tau", "sigma", "mu"):
        run.check(f"lambda4-{name}-stable", "invariance of H_1(A, Z)", True, lambda name=name: rows[4].stable[name])
    run.check("principal-unique", "only j = 4, a = 1 gives a principal polarization", [(4, 1)],
              lambda: [(r.j, r.a) for r in periods.uniqueness_sweep() if r.principal])
    run.check("sweep-formula", "P_j^2 = a^18 19^(8-2j)", True,
              lambda: all(r.pfaffian_squared == r.expected for r in periods.uniqueness_sweep()))
    generators = periods.generator_matrices(rep)
    for name, g in generators.items():
        run.check(f"unitary-{name}", "g^T conj(g) = 1", True, lambda g=g: periods.unitarity(g))
        run.check(f"form-invariant-{name}", "E(gx, gy) = E(x, y)", True,
                  lambda g=g: periods.form_invariant(g, [v(k) for k in range(9)]))
    run.check("q-endomorphism", "q(z) = l_0(z) v_0", True, periods.q_endomorphism_check)


SUITES: dict[Suite, Callable[[SuiteRunner], None]] = {
    Suite.ARITHMETIC: arithmetic_suite,
    Suite.GROUP: group_suite,
    Suite.CHARACTERS: characters_suite,
    Suite.JACOBIAN: jacobian_suite,
    Suite.LATTICE: lattice_suite,
    Suite.PENCIL: pencil_suite,
}


def run(options: RunOptions) -> Report:
    """Run the selected suites in order and collect their checks."""
    report = Report()
    for suite in options.suites():
        logger.info(f"Running suite {suite.value}")
        runner = SuiteRunner(suite, options)
        try:
            SUITES[suite](runner)
        except Exception as e:
            logger.error(f"Suite {suite.value} aborted: {type(e).__name__}: {e}")
            runner.report.checks.append(CheckResult(
                id=f"{suite.value}-setup", suite=suite.value, paper_ref="suite setup",
                status=CheckStatus.FAIL, expected="completed", actual=f"{type(e).__name__}: {e}"))
        report.suites.append(runner.report)
        s = runner.report
        logger.info(f"Suite {suite.value}: {sum(c.status is CheckStatus.PASS for c in s.checks)}"
                    f"/{len(s.checks)} passed")
    return report
