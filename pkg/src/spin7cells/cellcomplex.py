"""Cell bookkeeping: censuses, Poincare polynomials, boundary table, cone ledgers.

Everything here is combinatorial except :func:`verify_boundaries_numeric`,
which samples boundary faces of the chart domains and runs the
factorization of :mod:`spin7cells.charts` on the resulting group elements.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .cayley import _data_path
from .charts import DOMAINS, MARGIN, CellLabel, chart_product, factorize, sample_disc, subsets
from .errors import ConfigurationError, DomainError, InconsistencyError, NumericError

GENERATORS = {
    "point": (),
    "su2": (3,),
    "su3": (5, 3),
    "su4": (7, 5, 3),
    "g2": (6, 5, 3),
    "spin7": (6, 7, 5, 3),
    "s7": (7,),
}
SPACES = tuple(GENERATORS) + ("spin8",)


@dataclass(frozen=True)
class ProductCell:
    """A cell of Spin(7) x S^7: a Spin(7) cell times e^0 or e^7 of the sphere."""

    base: CellLabel
    sphere: int = 0

    @property
    def dim(self) -> int:
        return self.base.dim + self.sphere

    def __str__(self):
        return f"{self.base} x e^{self.sphere}"


def cell_census(space: str) -> list:
    """(cell, dim) pairs sorted by dimension."""
    if space == "spin8":
        cells = [ProductCell(c, s) for c in subsets(GENERATORS["spin7"]) for s in (0, 7)]
    elif space in GENERATORS:
        cells = subsets(GENERATORS[space])
    else:
        raise DomainError(f"unknown space {space!r}; expected one of {SPACES}")
    return sorted(((c, c.dim) for c in cells), key=lambda cd: (cd[1], str(cd[0])))


def poly_from_dims(dims) -> list[int]:
    dims = list(dims)
    coeffs = [0] * (max(dims, default=0) + 1)
    for d in dims:
        coeffs[d] += 1
    return coeffs


def poly_mul(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def poincare_polynomial(space: str) -> list[int]:
    """Integer coefficients, index = degree, of sum over cells of t^dim."""
    return poly_from_dims(d for _, d in cell_census(space))


def poincare_product(degrees) -> list[int]:
    """Expansion of prod (1 + t^n)."""
    out = [1]
    for n in degrees:
        out = poly_mul(out, [1] + [0] * (n - 1) + [1])
    return out


def format_poly(coeffs) -> str:
    terms = []
    for d, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if d == 0 else "t" if d == 1 else f"t^{d}"
        terms.append(f"{c if c != 1 or d == 0 else ''}{mono}")
    return " + ".join(terms) or "0"


# ------------------------------------------------------------------ boundaries

@dataclass(frozen=True)
class BoundaryRelation:
    cell: int
    lower: tuple

    def __str__(self):
        return f"{self.cell} <= {' '.join(map(str, self.lower))}"


def boundary_relations(data_dir=None) -> list[BoundaryRelation]:
    rels = []
    for line in _data_path("boundaries.txt", data_dir).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, tail = line.partition("<=")
        rels.append(BoundaryRelation(int(head), tuple(int(t) for t in tail.split())))
    return rels


def check_boundary_structure(relations, space: str = "spin7") -> list[str]:
    """Problems with the table: unknown cells or non-decreasing dimensions."""
    dims = {d for _, d in cell_census(space)}
    problems = []
    for rel in relations:
        if rel.cell not in dims:
            problems.append(f"{rel}: cell e^{rel.cell} not in the {space} census")
        for d in rel.lower:
            if d not in dims:
                problems.append(f"{rel}: e^{d} not in the {space} census")
            if d >= rel.cell:
                problems.append(f"{rel}: e^{d} is not of lower dimension")
    return problems


def closure(dims, relations) -> set[int]:
    """Cells in the closure of the given cells (transitive boundary table)."""
    table = {r.cell: r.lower for r in relations}
    out, todo = set(), list(dims)
    while todo:
        d = todo.pop()
        if d not in out:
            out.add(d)
            todo.extend(table.get(d, ()))
    return out


@dataclass
class BoundaryReport:
    relation: BoundaryRelation
    faces: int
    samples: int
    skips: int = 0
    misses: list = field(default_factory=list)

    @property
    def skip_fraction(self) -> float:
        return self.skips / self.samples if self.samples else 0.0

    @property
    def ok(self) -> bool:
        return not self.misses and self.skip_fraction <= 0.10


def boundary_faces(label: CellLabel):
    """(chart position, disc factor) pairs: one face per disc factor of each chart."""
    return [(i, j) for i, k in enumerate(label.gens) for j in range(len(DOMAINS[k]))]


def sample_face(label: CellLabel, face, rng, margin=MARGIN):
    ci, fi = face
    params = []
    for i, k in enumerate(label.gens):
        parts = [sample_disc(rng, n, 1.0 - margin) for n in DOMAINS[k]]
        if i == ci:
            u = rng.normal(size=DOMAINS[k][fi])
            parts[fi] = u / np.linalg.norm(u)
        params.append(np.concatenate(parts))
    return params


def verify_boundaries_numeric(relation: BoundaryRelation, nsamples: int = 20, rng=0,
                              relations=None) -> BoundaryReport:
    """Sample each boundary face of the cell and locate the image by factorization.

    A sample passes when its cell lies in the closure of the listed lower
    cells.  Samples whose factorization is ambiguous (numeric failure or a
    non-identity residue) count as skips.
    """
    relations = relations if relations is not None else boundary_relations()
    rng = np.random.default_rng(rng)
    label = CellLabel.from_dim(relation.cell)
    allowed = closure(relation.lower, relations)
    faces = boundary_faces(label)
    report = BoundaryReport(relation, len(faces), len(faces) * nsamples)
    for face in faces:
        for _ in range(nsamples):
            g = chart_product(label.gens, sample_face(label, face, rng))
            try:
                found = factorize(g)
            except (NumericError, InconsistencyError):
                report.skips += 1
                continue
            if found.label.dim not in allowed:
                report.misses.append((face, found.label.dim))
    return report


# ------------------------------------------------------------------ ledgers

ATTACHED_A_DEGREES = (7, 9, 11)


def reduced_degrees(expr: str) -> list[int]:
    """Reduced homology degrees (with multiplicity) of a wedge/join expression.

    Atoms: ``S<n>`` (n may be -1, the empty set), ``CP<n>``, ``A``; ``*``
    binds tighter than `` v ``.  Join adds: deg(X*Y) = {a + b + 1}.
    """
    out = []
    for summand in expr.split(" v "):
        degs = None
        for atom in summand.split("*"):
            atom = atom.strip()
            if m := re.fullmatch(r"S(-?\d+)", atom):
                d = [int(m.group(1))]
            elif m := re.fullmatch(r"CP(\d+)", atom):
                d = [2 * i for i in range(1, int(m.group(1)) + 1)]
            elif atom == "A":
                d = list(ATTACHED_A_DEGREES)
            else:
                raise ConfigurationError(f"cannot parse attached space {atom!r}")
            degs = d if degs is None else [a + b + 1 for a in degs for b in d]
        out.extend(degs)
    return sorted(out)


def parse_word(word: str) -> CellLabel:
    return CellLabel(tuple(int(ch) for ch in word))


@dataclass
class ConeStep:
    attached: str
    cells: list

    @property
    def predicted_dims(self) -> list[int]:
        return sorted(d + 1 for d in reduced_degrees(self.attached))

    @property
    def new_dims(self) -> list[int]:
        return sorted(c.dim for c in self.cells)

    @property
    def ok(self) -> bool:
        return self.predicted_dims == self.new_dims


@dataclass
class Filtration:
    """F_0 = e^0 and F_i = F_{i-1} plus the cells of step i (a cone on ``attached``)."""

    space: str
    steps: list
    base_cell: object = CellLabel()

    def stage(self, i: int) -> list:
        cells = [self.base_cell]
        for step in self.steps[:i]:
            cells.extend(step.cells)
        return cells

    def stage_dims(self, i: int) -> list[int]:
        return sorted(c.dim for c in self.stage(i))

    @property
    def length(self) -> int:
        return len(self.steps)

    def problems(self) -> list[str]:
        out = []
        seen = {self.base_cell}
        for i, step in enumerate(self.steps, 1):
            if not step.ok:
                out.append(f"step {i}: new dims {step.new_dims} != predicted {step.predicted_dims}")
            if seen & set(step.cells):
                out.append(f"step {i}: cells attached twice")
            seen |= set(step.cells)
        census = {c for c, _ in cell_census(self.space)}
        if seen != census:
            out.append(f"final stage does not exhaust the {self.space} census")
        return out


def load_filtrations(data_dir=None) -> dict[str, Filtration]:
    steps: dict[str, list] = {}
    for line in _data_path("filtrations.txt", data_dir).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, attached, words = (part.strip() for part in line.split("|"))
        name, idx = head.split()
        steps.setdefault(name, []).append((int(idx), ConeStep(attached, [parse_word(w) for w in words.split()])))
    out = {}
    for name, items in steps.items():
        items.sort(key=lambda t: t[0])
        if [i for i, _ in items] != list(range(1, len(items) + 1)):
            raise ConfigurationError(f"filtration {name} has non-consecutive steps")
        out[name] = Filtration(name, [s for _, s in items])
    return out


def join_expr(x: str, y: str) -> str:
    """Join of two wedge expressions, distributed over the wedge summands."""
    return " v ".join(f"{a}*{b}" for a in x.split(" v ") for b in y.split(" v "))


def product_filtration(a: Filtration, b: Filtration, space: str) -> Filtration:
    """Product cone decomposition: step k attaches the wedge of X_i * Y_j, i + j = k.

    Stage 0 of each factor is a cone on the empty set S^-1, so pairing with
    it leaves the other factor's attached space unchanged.
    """
    a_steps = [ConeStep("S-1", [a.base_cell])] + a.steps
    b_steps = [ConeStep("S-1", [b.base_cell])] + b.steps
    steps = []
    for k in range(1, a.length + b.length + 1):
        attached, cells = [], []
        for i in range(max(0, k - b.length), min(k, a.length) + 1):
            xa, yb = a_steps[i], b_steps[k - i]
            attached.append(join_expr(xa.attached, yb.attached))
            cells.extend(ProductCell(c, s.dim) for c in xa.cells for s in yb.cells)
        steps.append(ConeStep(" v ".join(attached), cells))
    return Filtration(space, steps, ProductCell(CellLabel(), 0))


def filtration_ledger(space: str = "spin7", data_dir=None) -> Filtration:
    filtrations = load_filtrations(data_dir)
    if space == "spin8":
        return product_filtration(filtrations["spin7"], filtrations["s7"], "spin8")
    if space not in filtrations:
        raise DomainError(f"no cone decomposition shipped for {space!r}")
    return filtrations[space]


# ------------------------------------------------------------------ join model

def join_param_homeo(u, v) -> np.ndarray:
    """(D^m x D^n, boundary) -> (D^{m+n}, S^{m+n-1}), rescaling rays from sup to round norm."""
    u, v = np.atleast_1d(np.asarray(u, float)), np.atleast_1d(np.asarray(v, float))
    z = np.concatenate([u, v])
    r = max(np.linalg.norm(u), np.linalg.norm(v))
    nz = np.linalg.norm(z)
    return z * (r / nz) if nz > 0 else z


def join_param_homeo_inverse(w, m: int):
    w = np.asarray(w, float)
    u, v = w[:m], w[m:]
    r = max(np.linalg.norm(u), np.linalg.norm(v))
    nw = np.linalg.norm(w)
    z = w * (nw / r) if r > 0 else w
    return z[:m], z[m:]
