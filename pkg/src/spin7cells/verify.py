"""Named verification checks grouped into suites, with a deterministic report.

Each check gets its own generator seeded from (seed, check id), so a
check's numbers do not depend on which other checks ran.
"""
from __future__ import annotations

import json
import zlib
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import cayley, cellcomplex, charts, cohomology, groups
from .errors import BoundaryError

SUITES = ("cayley", "groups", "charts", "complex", "cohomology")
DEFAULT_TOL = 1e-9
DEFAULT_SEED = 20070101


@dataclass
class CheckResult:
    check: str
    target: str
    status: str
    value: float | int
    tol: float
    samples: int
    seed: int


@dataclass
class Context:
    seed: int = DEFAULT_SEED
    tol: float = DEFAULT_TOL
    samples: int | None = None
    space: str | None = None
    data_dir: str | None = None

    def rng(self, check_id: str):
        return np.random.default_rng([self.seed, zlib.crc32(check_id.encode())])

    def n(self, default: int) -> int:
        return self.samples if self.samples is not None else default


@dataclass
class Check:
    id: str
    suite: str
    target: str
    samples: int
    tol: float | None  # None: the --tol value applies
    run: Callable
    spaces: tuple = ()


REGISTRY: list[Check] = []


def check(id, target, samples=0, tol=None, spaces=()):
    def deco(fn):
        REGISTRY.append(Check(id, id.split(".")[0], target, samples, tol, fn, spaces))
        return fn
    return deco


def _params(rng, kind, n):
    dim = groups.GENERATOR_DIMS[kind]
    return [charts.sample_disc(rng, dim) for _ in range(n)]


# ------------------------------------------------------------------ cayley

@check("cayley.table_unique", "derive_mult_table", samples=1000, tol=0)
def _(ctx, rng, n):
    found = cayley.search_mult_tables(n, ctx.seed)
    shipped = cayley.load_mult_table(ctx.data_dir)
    ok = len(found) == 1 and found[0] == shipped
    return len(found), ok


@check("cayley.norm_multiplicative", "octonion_mul", samples=1000)
def _(ctx, rng, n):
    x, y = rng.normal(size=(2, n, 8))
    return float(np.max(np.abs(cayley.norm(cayley.mul(x, y)) - cayley.norm(x) * cayley.norm(y))))


@check("cayley.alternative", "octonion_mul", samples=1000)
def _(ctx, rng, n):
    x, y = rng.normal(size=(2, n, 8))
    m = cayley.mul
    left = np.abs(m(x, m(x, y)) - m(m(x, x), y)).max()
    right = np.abs(m(m(y, x), x) - m(y, m(x, x))).max()
    return float(max(left, right))


@check("cayley.conj_antiautomorphism", "conj", samples=1000)
def _(ctx, rng, n):
    x, y = rng.normal(size=(2, n, 8))
    m, c = cayley.mul, cayley.conj
    return float(np.abs(c(m(x, y)) - m(c(y), c(x))).max())


@check("cayley.nonassociative", "octonion_mul", tol=0)
def _(ctx, rng, n):
    e = np.eye(8)
    m = cayley.mul
    witnesses = sum(
        np.abs(m(m(e[i], e[j]), e[k]) - m(e[i], m(e[j], e[k]))).max() > 0.5
        for i in range(1, 8) for j in range(1, 8) for k in range(1, 8))
    return int(witnesses), witnesses > 0


# ------------------------------------------------------------------ groups

@check("groups.g2_identity_ABC", "is_g2", samples=1000)
def _(ctx, rng, n):
    worst = 0.0
    for kind in "ABC":
        for p in _params(rng, kind, n):
            worst = max(worst, groups.g2_defect(groups.generator_matrix(kind, p), 1, rng))
    return worst


@check("groups.dprime_identity", "generator_matrix", samples=1000)
def _(ctx, rng, n):
    worst = 0.0
    for w in _params(rng, "D", n):
        d, dp = groups.generator_matrix("D", w), groups.generator_matrix("Dprime", w)
        x, y = rng.normal(size=(2, 8))
        worst = max(worst, np.abs(cayley.mul(dp @ x, d @ y) - d @ cayley.mul(x, y)).max())
    return float(worst)


@check("groups.generators_special_orthogonal", "is_special_orthogonal", samples=100)
def _(ctx, rng, n):
    bad = sum(not groups.is_special_orthogonal(groups.generator_matrix(kind, p), ctx.tol)
              for kind in groups.GENERATOR_DIMS for p in _params(rng, kind, n))
    return bad, bad == 0


@check("groups.generators_in_spin7", "is_spin7", samples=100)
def _(ctx, rng, n):
    bad = sum(not groups.is_spin7(groups.generator_matrix(kind, p), 16, ctx.tol, rng)
              for kind in "ABCD" for p in _params(rng, kind, n))
    return bad, bad == 0


@check("groups.charts_in_spin7", "is_spin7", samples=100)
def _(ctx, rng, n):
    bad = sum(not groups.is_spin7(charts.char_map(k, charts.sample_interior(k, rng, 0.0)), 16, ctx.tol, rng)
              for k in (3, 5, 6, 7) for _ in range(n))
    return bad, bad == 0


@check("groups.double_cover", "vector_rep", samples=100, tol=1e-12)
def _(ctx, rng, n):
    worst = 0.0
    for _ in range(n):
        g = groups.random_spin7(rng)
        worst = max(worst, np.abs(groups.vector_rep(g) - groups.vector_rep(-g)).max())
    return float(worst)


@check("groups.minus_identity_in_spin7", "is_spin7", tol=0)
def _(ctx, rng, n):
    ok = groups.is_spin7(-np.eye(8), tol=ctx.tol) and not groups.is_spin7(np.diag([1.0] * 7 + [-1.0]), tol=ctx.tol)
    return int(ok), ok


@check("groups.su4_fixes_e1", "vector_rep", samples=100)
def _(ctx, rng, n):
    worst = 0.0
    for _ in range(n):
        g = charts.chart_product((7, 5, 3), [charts.sample_interior(k, rng, 0.0) for k in (7, 5, 3)])
        worst = max(worst, np.abs(groups.vector_rep(g)[:, 1] - cayley.basis(1)).max())
    return float(worst)


@check("groups.su4_membership", "is_su4", samples=100, tol=0)
def _(ctx, rng, n):
    inside = all(groups.is_su4(charts.char_map(k, charts.sample_interior(k, rng)), ctx.tol)
                 for k in (3, 5, 7) for _ in range(n))
    outside = sum(groups.is_su4(charts.char_map(6, charts.sample_interior(6, rng)), ctx.tol)
                  for _ in range(n))
    return outside, inside and outside == 0


# ------------------------------------------------------------------ charts

@check("charts.p0phi7_roundtrip", "invert_p0_phi7", samples=1000, tol=1e-6)
def _(ctx, rng, n):
    worst = 0.0
    for _ in range(n):
        v = charts.sample_interior(7, rng)
        a = groups.proj_p0(charts.char_map(7, v))
        worst = max(worst, np.abs(charts.invert_p0_phi7(a) - v).max())
    return float(worst)


@check("charts.p0phi7_boundary_faces", "char_map", samples=100)
def _(ctx, rng, n):
    label = charts.CellLabel((7,))
    worst = 0.0
    for face in cellcomplex.boundary_faces(label):
        for _ in range(n):
            (v,) = cellcomplex.sample_face(label, face, rng, margin=0.0)
            worst = max(worst, np.linalg.norm(groups.proj_p0(charts.char_map(7, v)) - cayley.basis(0)))
    return float(worst)


@check("charts.pphi6_roundtrip", "invert_chart_numeric", samples=200, tol=1e-10)
def _(ctx, rng, n):
    worst = 0.0
    for _ in range(n):
        t = groups.proj_p(charts.char_map(6, charts.sample_interior(6, rng)))
        v = charts.invert_chart_numeric(6, t)
        worst = max(worst, np.linalg.norm(groups.proj_p(charts.char_map(6, v)) - t))
    return float(worst)


@check("charts.basepoints_rejected", "invert_chart_numeric", tol=0)
def _(ctx, rng, n):
    rejected = 0
    for k in (3, 5, 6, 7):
        try:
            if k == 7:
                charts.invert_p0_phi7(cayley.basis(0))
            else:
                charts.invert_chart_numeric(k, cayley.basis(charts.BASEPOINT[k]))
        except BoundaryError:
            rejected += 1
    return rejected, rejected == 4


@check("charts.factorize_products", "factorize", samples=100, tol=1e-5)
def _(ctx, rng, n):
    worst_rec, worst_par, wrong = 0.0, 0.0, 0
    for _ in range(n):
        params = [charts.sample_interior(k, rng) for k in charts.ORDER]
        g = charts.chart_product(charts.ORDER, params)
        f = charts.factorize(g)
        wrong += f.label.gens != charts.ORDER
        worst_rec = max(worst_rec, np.linalg.norm(f.matrix() - g))
        if f.label.gens == charts.ORDER:
            worst_par = max(worst_par, max(np.abs(a - b).max() for a, b in zip(f.params, params)))
    return float(worst_rec), wrong == 0 and worst_rec <= 1e-5 and worst_par <= 1e-4


@check("charts.factorize_singletons", "factorize", samples=10, tol=0)
def _(ctx, rng, n):
    wrong = int(charts.factorize(np.eye(8)).label.gens != ())
    for k in charts.ORDER:
        for _ in range(n):
            wrong += charts.factorize(charts.char_map(k, charts.sample_interior(k, rng))).label.gens != (k,)
    return wrong, wrong == 0


# ------------------------------------------------------------------ complex

EXPECTED_DIMS = {
    "spin7": [0, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 18, 21],
    "su4": [0, 3, 5, 7, 8, 10, 12, 15],
    "su2": [0, 3],
}


@check("complex.census", "cell_census", tol=0, spaces=tuple(EXPECTED_DIMS))
def _(ctx, rng, n, space):
    dims = [d for _, d in cellcomplex.cell_census(space)]
    return len(dims), dims == EXPECTED_DIMS[space]


@check("complex.poincare", "poincare_polynomial", tol=0,
       spaces=("su2", "su3", "su4", "g2", "spin7", "spin8"))
def _(ctx, rng, n, space):
    degrees = list(cellcomplex.GENERATORS.get(space, cellcomplex.GENERATORS["spin7"]))
    if space == "spin8":
        degrees.append(7)
    ok = cellcomplex.poincare_polynomial(space) == cellcomplex.poincare_product(degrees)
    return sum(cellcomplex.poincare_polynomial(space)), ok


@check("complex.boundary_structure", "boundary_relations", tol=0)
def _(ctx, rng, n):
    problems = cellcomplex.check_boundary_structure(cellcomplex.boundary_relations(ctx.data_dir))
    return len(problems), not problems


@check("complex.boundary_numeric", "verify_boundaries_numeric", samples=20, tol=0)
def _(ctx, rng, n):
    rels = cellcomplex.boundary_relations(ctx.data_dir)
    misses, skip = 0, 0.0
    ok = True
    for rel in rels:
        rep = cellcomplex.verify_boundaries_numeric(rel, n, rng, rels)
        misses += len(rep.misses)
        skip = max(skip, rep.skip_fraction)
        ok &= rep.ok
    return misses, ok


@check("complex.filtration", "filtration_ledger", tol=0, spaces=("spin7", "su4", "spin8"))
def _(ctx, rng, n, space):
    problems = cellcomplex.filtration_ledger(space, ctx.data_dir).problems()
    return len(problems), not problems


@check("complex.join_roundtrip", "join_param_homeo", samples=1000)
def _(ctx, rng, n):
    worst = 0.0
    for _ in range(n):
        m, k = rng.integers(1, 6, size=2)
        u, v = charts.sample_disc(rng, m), charts.sample_disc(rng, k)
        w = cellcomplex.join_param_homeo(u, v)
        u2, v2 = cellcomplex.join_param_homeo_inverse(w, m)
        worst = max(worst, np.abs(np.concatenate([u2 - u, v2 - v])).max())
        u[:] /= np.linalg.norm(u)
        worst = max(worst, abs(np.linalg.norm(cellcomplex.join_param_homeo(u, v)) - 1.0))
    return float(worst)


# ------------------------------------------------------------------ cohomology

EXPECTED_CATEGORY = {
    **{f"f{i}": i for i in range(1, 6)},
    **{f"f'{i}": i for i in range(1, 4)},
    "spin7": 5,
    "spin8": 6,
}


@check("cohomology.cup_length", "cup_length", tol=0, spaces=tuple(EXPECTED_CATEGORY))
def _(ctx, rng, n, space):
    rep = cohomology.ls_category_report(space, ctx.data_dir)
    return rep.lower, rep.lower == EXPECTED_CATEGORY[space]


@check("cohomology.category", "ls_category_report", tol=0, spaces=tuple(EXPECTED_CATEGORY))
def _(ctx, rng, n, space):
    rep = cohomology.ls_category_report(space, ctx.data_dir)
    want = EXPECTED_CATEGORY[space]
    return rep.upper, rep.as_tuple() == (want, want, "determined")


@check("cohomology.cup_length_bruteforce", "cup_length", tol=0)
def _(ctx, rng, n):
    rings = cohomology.load_rings(ctx.data_dir)
    spin7 = rings["spin7"]
    f = cellcomplex.filtration_ledger("spin7", ctx.data_dir)
    targets = [spin7.truncate(f.stage_dims(i)) for i in (1, 2)] + list(rings.values())
    bad = sum(cohomology.cup_length(r) != cohomology.cup_length_bruteforce(r) for r in targets)
    return bad, bad == 0


@check("cohomology.ss_ledger", "ss_ledger_check", tol=0)
def _(ctx, rng, n):
    rep = cohomology.ss_ledger_check(ctx.data_dir)
    ok = rep.ok and len(rep.steps) == 7 and all(removed == 2 for _, removed in rep.steps)
    return len(rep.problems), ok


@check("cohomology.fiber_ranks", "ss_ledger_check", tol=0)
def _(ctx, rng, n):
    fib = cohomology.load_fibration(ctx.data_dir)
    derived = cohomology.derive_fiber_ranks(fib["base"], fib["total"], fib["fiber_top"])
    expected = {0: 1, 7: 1, 9: 2, 11: 4}
    return sum(derived.values()), derived == fib["fiber"] == expected


@check("cohomology.sq2", "sq2_check", tol=0)
def _(ctx, rng, n):
    rep = cohomology.sq2_check(ctx.data_dir)
    expected = {3: 5, 10: 12, 5: 0, 7: 0, 8: 0, 12: 0}
    ok = rep.ok and rep.table == expected and rep.sq2_x7 == 0 and rep.sq2_x9 == "x11"
    return rep.sq2_x7, ok


# ------------------------------------------------------------------ runner

def _space_key(space):
    return space.lower().replace("fp", "f'")


def select(suite: str, space: str | None = None) -> list[tuple[Check, str | None]]:
    """(check, space) pairs for the suite, restricted to ``space`` when given."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    chosen = []
    for c in REGISTRY:
        if suite != "all" and c.suite != suite:
            continue
        if not c.spaces:
            if space is None:
                chosen.append((c, None))
            continue
        for s in c.spaces:
            if space is None or _space_key(space) == s:
                chosen.append((c, s))
    return sorted(chosen, key=lambda cs: (cs[0].id, cs[1] or ""))


def known_spaces() -> set[str]:
    return {s for c in REGISTRY for s in c.spaces}


def run_check(c: Check, space, ctx: Context) -> CheckResult:
    cid = c.id if space is None else f"{c.id}[{space}]"
    n = ctx.n(c.samples) if c.samples else 0
    tol = ctx.tol if c.tol is None else c.tol
    args = (ctx, ctx.rng(cid), n) + ((space,) if space is not None else ())
    out = c.run(*args)
    if isinstance(out, tuple):
        value, ok = out
    else:
        value, ok = out, out <= tol
    return CheckResult(cid, c.target if space is None else f"{space}/{c.target}",
                       "pass" if ok else "fail", value, tol, n, ctx.seed)


def run_suite(suite: str, ctx: Context) -> list[CheckResult]:
    return [run_check(c, s, ctx) for c, s in select(suite, ctx.space)]


COLUMNS = ("check", "target", "status", "value", "tol", "samples", "seed")


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{v:.3e}"


def format_report(results: list[CheckResult], fmt: str = "text") -> str:
    if fmt == "data":
        rows = [{k: (v.item() if hasattr(v, "item") else v) for k, v in asdict(r).items()} for r in results]
        summary = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "skip")}
        return json.dumps({"checks": rows, "summary": summary}, indent=2, sort_keys=True) + "\n"
    lines = ["\t".join(COLUMNS)]
    for r in results:
        lines.append("\t".join([r.check, r.target, r.status, _fmt(r.value), _fmt(r.tol),
                                str(r.samples), str(r.seed)]))
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "skip")}
    lines.append(f"# {len(results)} checks: {counts['pass']} pass, {counts['fail']} fail, {counts['skip']} skip")
    return "\n".join(lines) + "\n"
