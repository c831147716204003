"""The thirteen acceptance criteria, each at its stated tolerance.

Run under pytest (a PASS/FAIL line per criterion appears in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""
import numpy as np
import pytest

from spin7cells import cayley, cellcomplex, charts, cohomology, groups
from spin7cells.errors import BoundaryError

SEED = 12345
RESULTS: dict[int, tuple[bool, str]] = {}


def _rng(n):
    return np.random.default_rng([SEED, n])


def _disc(rng, kind):
    return charts.sample_disc(rng, groups.GENERATOR_DIMS[kind])


def criterion_1():
    found = cayley.search_mult_tables(1000, SEED)
    rng = _rng(1)
    x, y = rng.normal(size=(2, 1000, 8))
    err = np.abs(cayley.norm(cayley.mul(x, y)) - cayley.norm(x) * cayley.norm(y)).max()
    ok = len(found) == 1 and found[0] == cayley.load_mult_table() and err <= 1e-9
    return ok, f"{len(found)} table(s), norm error {err:.1e}"


def criterion_2():
    rng = _rng(2)
    worst = 0.0
    for _ in range(1000):
        x, y = groups.random_unit_octonions(rng, 2)
        for kind in "ABC":
            M = groups.generator_matrix(kind, _disc(rng, kind))
            worst = max(worst, np.abs(cayley.mul(M @ x, M @ y) - M @ cayley.mul(x, y)).max())
        w = _disc(rng, "D")
        d, dp = groups.generator_matrix("D", w), groups.generator_matrix("Dprime", w)
        worst = max(worst, np.abs(cayley.mul(dp @ x, d @ y) - d @ cayley.mul(x, y)).max())
    spin_fail = 0
    for _ in range(100):
        for kind in "ABCD":
            spin_fail += not groups.is_spin7(groups.generator_matrix(kind, _disc(rng, kind)), rng=rng)
        for k in (3, 5, 6, 7):
            spin_fail += not groups.is_spin7(charts.char_map(k, charts.sample_interior(k, rng, 0.0)), rng=rng)
    return worst <= 1e-9 and spin_fail == 0, f"identity error {worst:.1e}, {spin_fail} is_spin7 failures"


def criterion_3():
    rng = _rng(3)
    err = 0.0
    for _ in range(1000):
        v = charts.sample_interior(7, rng, 0.05)
        err = max(err, np.abs(charts.invert_p0_phi7(groups.proj_p0(charts.char_map(7, v))) - v).max())
    label = charts.CellLabel((7,))
    faces = cellcomplex.boundary_faces(label)
    bnd = 0.0
    for face in faces:
        for _ in range(100):
            (v,) = cellcomplex.sample_face(label, face, rng, margin=0.0)
            bnd = max(bnd, np.abs(groups.proj_p0(charts.char_map(7, v)) - cayley.basis(0)).max())
    ok = err <= 1e-6 and bnd <= 1e-9 and len(faces) == 3
    return ok, f"round trip {err:.1e}, {len(faces)} faces to e0 within {bnd:.1e}"


def criterion_4():
    rng = _rng(4)
    res = 0.0
    for _ in range(200):
        t = groups.proj_p(charts.char_map(6, charts.sample_interior(6, rng)))
        v = charts.invert_chart_numeric(6, t)
        res = max(res, np.linalg.norm(groups.proj_p(charts.char_map(6, v)) - t))
    rejected = 0
    for k in (3, 5, 6):
        try:
            charts.invert_chart_numeric(k, cayley.basis(charts.BASEPOINT[k]))
        except BoundaryError:
            rejected += 1
    try:
        charts.invert_p0_phi7(cayley.basis(0))
    except BoundaryError:
        rejected += 1
    return res <= 1e-10 and rejected == 4, f"residual {res:.1e}, {rejected}/4 basepoints rejected"


def criterion_5():
    rng = _rng(5)
    rec = par = 0.0
    wrong = 0
    for _ in range(100):
        params = [charts.sample_interior(k, rng) for k in charts.ORDER]
        g = charts.chart_product(charts.ORDER, params)
        f = charts.factorize(g)
        if f.label.gens != charts.ORDER:
            wrong += 1
            continue
        rec = max(rec, np.abs(f.matrix() - g).max())
        par = max(par, max(np.abs(a - b).max() for a, b in zip(f.params, params)))
    identity = charts.factorize(np.eye(8)).label.gens == ()
    singles = all(
        charts.factorize(charts.char_map(k, charts.sample_interior(k, rng))).label.gens == (k,)
        for k in charts.ORDER for _ in range(5))
    ok = wrong == 0 and rec <= 1e-5 and par <= 1e-4 and identity and singles
    return ok, f"reconstruction {rec:.1e}, parameters {par:.1e}, identity {identity}, singletons {singles}"


def criterion_6():
    spin7 = [d for _, d in cellcomplex.cell_census("spin7")]
    su4 = [d for _, d in cellcomplex.cell_census("su4")]
    poly = cellcomplex.poincare_polynomial("spin7")
    ok = (spin7 == [0, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 18, 21]
          and su4 == [0, 3, 5, 7, 8, 10, 12, 15]
          and poly == cellcomplex.poincare_product([3, 5, 6, 7]))
    return ok, f"{len(spin7)} Spin(7) cells, {len(su4)} SU(4) cells, P(t) = {cellcomplex.format_poly(poly)}"


def criterion_7():
    rels = cellcomplex.boundary_relations()
    problems = cellcomplex.check_boundary_structure(rels)
    reports = [cellcomplex.verify_boundaries_numeric(r, 20, _rng(700 + r.cell), rels) for r in rels]
    misses = sum(len(r.misses) for r in reports)
    skip = max(r.skip_fraction for r in reports)
    ok = not problems and all(r.ok for r in reports) and len(rels) == 15
    return ok, f"{len(rels)} relations, {len(problems)} structural problems, {misses} misses, max skip {skip:.0%}"


def criterion_8():
    f = cellcomplex.filtration_ledger("spin7")
    expected = [[3, 5, 7], [6, 8, 10, 12], [9, 11, 13, 15], [14, 16, 18], [21]]
    got = [s.new_dims for s in f.steps]
    predicted = [s.predicted_dims for s in f.steps]
    ok = got == expected == predicted and not f.problems()
    return ok, f"new cells {got}"


def criterion_9():
    expect = {**{f"f{i}": i for i in range(1, 6)}, **{f"f'{i}": i for i in range(1, 4)},
              "spin7": 5, "spin8": 6}
    got = {s: cohomology.ls_category_report(s).as_tuple() for s in expect}
    bad = {s: t for s, t in got.items() if t != (expect[s], expect[s], "determined")}
    return not bad, f"spin7 {got['spin7']}, spin8 {got['spin8']}, mismatches {bad or 'none'}"


def criterion_10():
    fib = cohomology.load_fibration()
    derived = cohomology.derive_fiber_ranks(fib["base"], fib["total"], fib["fiber_top"])
    ranks_ok = all(derived.get(d, 0) == r for d, r in {7: 1, 9: 2, 11: 4, 8: 0, 10: 0}.items())
    rep = cohomology.ss_ledger_check()
    legal = len(rep.steps) == 7 and all(removed == 2 for _, removed in rep.steps)
    surv = {}
    for (p, q), r in rep.survivors.items():
        surv[p + q] = surv.get(p + q, 0) + r
    # suspension of CP^3: classes in degrees 0, 3, 5, 7
    ok = ranks_ok and legal and rep.ok and fib["fiber"] == derived and surv == {0: 1, 3: 1, 5: 1, 7: 1}
    return ok, f"fiber ranks {derived}, {len(rep.steps)} cancellations, survivors {surv}"


def criterion_11():
    rep = cohomology.sq2_check()
    table_ok = all(rep.table[n] == n + 2 for n in (3, 10)) and all(rep.table[n] == 0 for n in (5, 7, 8, 12))
    ok = table_ok and rep.sq2_x7 == 0 and rep.ok
    return ok, f"table {rep.table}, Sq2 x7 = {rep.sq2_x7}, Sq2 x9 = {rep.sq2_x9}"


def criterion_12():
    rng = _rng(12)
    cover = 0.0
    for _ in range(100):
        g = groups.random_spin7(rng)
        cover = max(cover, np.abs(groups.vector_rep(g) - groups.vector_rep(-g)).max())
    fix = 0.0
    for _ in range(100):
        g = charts.chart_product((7, 5, 3), [charts.sample_interior(k, rng, 0.0) for k in (7, 5, 3)])
        fix = max(fix, np.abs(groups.vector_rep(g)[:, 1] - cayley.basis(1)).max())
    minus = groups.is_spin7(-np.eye(8))
    return cover <= 1e-12 and minus and fix <= 1e-9, f"cover {cover:.1e}, -I in Spin(7) {minus}, e1 fixed within {fix:.1e}"


def criterion_13():
    rng = _rng(13)
    rt = bnd = 0.0
    for _ in range(1000):
        m, n = rng.integers(1, 8, size=2)
        u, v = charts.sample_disc(rng, m), charts.sample_disc(rng, n)
        w = cellcomplex.join_param_homeo(u, v)
        u2, v2 = cellcomplex.join_param_homeo_inverse(w, m)
        rt = max(rt, np.abs(np.concatenate([u2 - u, v2 - v])).max())
        # a point with a boundary factor goes to the sphere, and back
        if rng.uniform() < 0.5:
            u = u / np.linalg.norm(u)
        else:
            v = v / np.linalg.norm(v)
        w = cellcomplex.join_param_homeo(u, v)
        u2, v2 = cellcomplex.join_param_homeo_inverse(w, m)
        bnd = max(bnd, abs(np.linalg.norm(w) - 1.0),
                  abs(max(np.linalg.norm(u2), np.linalg.norm(v2)) - 1.0))
    return rt <= 1e-9 and bnd <= 1e-9, f"round trip {rt:.1e}, boundary {bnd:.1e}"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 14)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail = CRITERIA[n]()
    RESULTS[n] = (ok, detail)
    assert ok, f"criterion {n}: {detail}"


def summary_lines():
    return [f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {detail}" for n, (ok, detail) in sorted(RESULTS.items())]


if __name__ == "__main__":
    for n, fn in CRITERIA.items():
        RESULTS[n] = fn()
        print(summary_lines()[-1])
