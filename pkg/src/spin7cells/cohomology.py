"""Mod 2 cup length, LS-category bounds and the rank ledger of a spectral sequence.

Rings are monomial presentations over GF(2): generators with degrees and
nilpotency heights, optionally truncated to a set of kept degrees (the
cohomology of a subcomplex with one cell per dimension).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field, replace

from .cayley import _data_path
from .cellcomplex import filtration_ledger
from .errors import ConfigurationError, DomainError, LedgerError


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    height: int


@dataclass(frozen=True)
class GradedRingGF2:
    generators: tuple
    keep: frozenset | None = None

    def monomials(self) -> list[tuple]:
        """Exponent vectors of the additive basis (kept degrees only)."""
        ranges = [range(g.height) for g in self.generators]
        return [m for m in itertools.product(*ranges) if self.kept(self.degree(m))]

    def degree(self, mono) -> int:
        return sum(k * g.degree for k, g in zip(mono, self.generators))

    def kept(self, degree: int) -> bool:
        return self.keep is None or degree in self.keep

    def is_zero_monomial(self, mono) -> bool:
        return (any(k >= g.height for k, g in zip(mono, self.generators))
                or not self.kept(self.degree(mono)))

    @property
    def top_degree(self) -> int:
        return sum((g.height - 1) * g.degree for g in self.generators)

    def truncate(self, degrees) -> "GradedRingGF2":
        """Quotient keeping the given degrees; they must be closed under division."""
        ring = replace(self, keep=frozenset(degrees))
        kept = set(ring.monomials())
        for m in kept:
            for i, k in enumerate(m):
                if k and m[:i] + (k - 1,) + m[i + 1:] not in kept:
                    raise ConfigurationError(f"truncation to {sorted(degrees)} is not a quotient ring")
        return ring

    def name(self, mono) -> str:
        parts = [g.name if k == 1 else f"{g.name}^{k}" for k, g in zip(mono, self.generators) if k]
        return "*".join(parts) or "1"


def load_rings(data_dir=None) -> dict[str, GradedRingGF2]:
    rings, current = {}, None
    keep = {}
    for line in _data_path("rings.txt", data_dir).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if m := re.fullmatch(r"\[(\S+)\]", line):
            current = m.group(1)
            rings[current] = []
        elif line.startswith("keep"):
            keep[current] = frozenset(int(t) for t in line.split()[1:])
        else:
            name, *fields = line.split()
            kv = dict(f.split("=") for f in fields)
            rings[current].append(Generator(name, int(kv["deg"]), int(kv["height"])))
    return {k: GradedRingGF2(tuple(v), keep.get(k)) for k, v in rings.items()}


def additive_basis(ring: GradedRingGF2) -> dict[int, int]:
    ranks: dict[int, int] = {}
    for m in ring.monomials():
        d = ring.degree(m)
        ranks[d] = ranks.get(d, 0) + 1
    return dict(sorted(ranks.items()))


def cup_length(ring: GradedRingGF2) -> int:
    """Longest nonzero product of positive-degree generators (with repetition).

    Over GF(2) with a monomial basis every nonzero product of k homogeneous
    classes contains a nonzero product of at least k generators, so this is
    the cup length of the whole ring.
    """
    return max((sum(m) for m in ring.monomials()), default=0)


def longest_product(ring: GradedRingGF2) -> str:
    best = max(ring.monomials(), key=sum, default=None)
    return ring.name(best) if best is not None else "1"


def _multiply(ring, a: frozenset, b: frozenset) -> frozenset:
    out = set()
    for ma in a:
        for mb in b:
            m = tuple(x + y for x, y in zip(ma, mb))
            if not ring.is_zero_monomial(m):
                out ^= {m}
    return frozenset(out)


def cup_length_bruteforce(ring: GradedRingGF2) -> int:
    """Cup length by search over every nonzero homogeneous element.

    Level k holds all nonzero k-fold products; the search stops at the
    first empty level.  Exponential in the ranks, fine for the shipped rings.
    """
    by_degree: dict[int, list] = {}
    for m in ring.monomials():
        by_degree.setdefault(ring.degree(m), []).append(m)
    elements = []
    for d, monos in by_degree.items():
        if d == 0:
            continue
        for r in range(1, len(monos) + 1):
            elements.extend(frozenset(c) for c in itertools.combinations(monos, r))
    level, k = set(elements), 0
    while level:
        k += 1
        level = {p for x in level for h in elements if (p := _multiply(ring, x, h))}
    return k


# ------------------------------------------------------------------ category

# space -> (ring name, cone ledger name, number of ledger steps or None for all)
CATEGORY_SPACES = {
    "su2": ("su2", "su2", None),
    "su3": ("su3", "su3", None),
    "su4": ("su4", "su4", None),
    "g2": ("g2", None, None),
    "spin7": ("spin7", "spin7", None),
    "spin8": ("spin8", "spin8", None),
    **{f"f{i}": ("spin7", "spin7", i) for i in range(1, 6)},
    **{f"f'{i}": ("su4", "su4", i) for i in range(1, 4)},
}


def normalize_space(space: str) -> str:
    s = space.lower().replace("fp", "f'")
    if s not in CATEGORY_SPACES:
        raise DomainError(f"unknown space {space!r}; expected one of {sorted(CATEGORY_SPACES)}")
    return s


@dataclass
class CategoryReport:
    space: str
    lower: int
    upper: int | None
    longest: str
    truncated: bool = False

    @property
    def verdict(self) -> str:
        if self.upper is None:
            return "open"
        return "determined" if self.lower == self.upper else "gap"

    def as_tuple(self):
        return self.lower, self.upper, self.verdict


def ls_category_report(space: str, data_dir=None) -> CategoryReport:
    """Cup length (lower bound for wcat) against cone-ledger length (upper bound for Cat).

    Truncated rings for the subcomplexes F_i are a modelling choice: keep
    the monomials whose degree is a cell dimension of F_i.
    """
    space = normalize_space(space)
    ring_name, ledger_name, steps = CATEGORY_SPACES[space]
    ring = load_rings(data_dir)[ring_name]
    upper = None
    if ledger_name is not None:
        ledger = filtration_ledger(ledger_name, data_dir)
        if ledger.problems():
            raise ConfigurationError(f"cone ledger for {ledger_name}: {ledger.problems()}")
        upper = ledger.length if steps is None else steps
        if steps is not None:
            ring = ring.truncate(ledger.stage_dims(steps))
    return CategoryReport(space, cup_length(ring), upper, longest_product(ring), steps is not None)


# ------------------------------------------------------------------ spectral sequence

def _parse_ranks(tokens) -> dict[int, int]:
    return {int(d): int(r) for d, r in (t.split(":") for t in tokens)}


def load_fibration(data_dir=None) -> dict:
    out = {}
    for line in _data_path("fibration.txt", data_dir).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key == "fiber_top":
            out[key] = int(rest[0])
        else:
            out[key] = _parse_ranks(rest[1:])
    return out


@dataclass(frozen=True)
class Matching:
    source: str
    q: int
    target: str
    r: int

    @property
    def target_position(self) -> tuple[int, int]:
        """(p, q) of the target named like ``y8`` or ``y3*x9'``."""
        base, _, fiber = self.target.partition("*")
        p = int(re.fullmatch(r"y(\d+)", base).group(1))
        qf = int(re.fullmatch(r"x(\d+)'*", fiber).group(1)) if fiber else 0
        return p, qf


def load_ss_ledger(data_dir=None) -> list[Matching]:
    out = []
    pat = re.compile(r"(\S+)\s+q=(\d+)\s+->\s+(\S+)\s+r=(\d+)")
    for line in _data_path("ss_ledger.txt", data_dir).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = pat.fullmatch(line)
        if not m:
            raise ConfigurationError(f"bad ledger line {line!r}")
        out.append(Matching(m.group(1), int(m.group(2)), m.group(3), int(m.group(4))))
    return out


def e2_ranks(base, fiber, top: int, fiber_top: int) -> dict[tuple[int, int], int]:
    out = {}
    for p, rp in base.items():
        for q, rq in fiber.items():
            if p + q <= top and q <= fiber_top and rp * rq:
                out[(p, q)] = rp * rq
    return out


@dataclass
class LedgerReport:
    e2: dict
    survivors: dict
    steps: list = field(default_factory=list)
    total: dict = field(default_factory=dict)
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def ss_ledger_check(data_dir=None, top: int = 12) -> LedgerReport:
    """Apply each matching as a rank-1 cancellation, lowest page first.

    Survivors in every total degree <= ``top`` must match the total space.
    Entries (0, n) with n above the known fiber range are excluded.
    """
    fib = load_fibration(data_dir)
    fiber_top = fib["fiber_top"]
    e2 = e2_ranks(fib["base"], fib["fiber"], top, fiber_top)
    ranks = dict(e2)
    report = LedgerReport(e2, ranks, total=fib["total"])
    for m in sorted(load_ss_ledger(data_dir), key=lambda m: (m.r, m.q, m.source)):
        src = (0, m.q)
        tgt = m.target_position
        if tgt != (m.r, m.q - m.r + 1):
            report.problems.append(f"{m.source}: d_{m.r} from {src} cannot hit {tgt}")
            continue
        if ranks.get(src, 0) < 1 or ranks.get(tgt, 0) < 1:
            report.problems.append(f"{m.source} -> {m.target}: illegal cancellation at {src}/{tgt}")
            continue
        before = sum(ranks.values())
        ranks[src] -= 1
        ranks[tgt] -= 1
        report.steps.append((m, before - sum(ranks.values())))
    for n in range(top + 1):
        got = sum(r for (p, q), r in ranks.items() if p + q == n)
        want = fib["total"].get(n, 0)
        if got != want:
            report.problems.append(f"total degree {n}: {got} survivors, expected {want}")
    report.survivors = {pq: r for pq, r in ranks.items() if r}
    return report


def derive_fiber_ranks(base, total, top: int) -> dict[int, int]:
    """Fiber ranks forced if every positive fiber class supports a differential.

    A base-positive E2 class in total degree n that is absent from the total
    space must be hit from (0, n-1); so rank H^{n-1}(F) is the surplus of
    base-positive classes in total degree n.
    """
    fiber = {0: 1}
    for q in range(1, top + 1):
        n = q + 1
        supply = sum(base.get(n - qq, 0) * r for qq, r in fiber.items() if n - qq > 0)
        surplus = supply - total.get(n, 0)
        if surplus < 0:
            raise LedgerError(f"total degree {n} has fewer classes than the total space")
        if surplus:
            fiber[q] = surplus
    return fiber


def load_sq2(data_dir=None) -> dict[int, int]:
    out = {}
    for line in _data_path("sq2.txt", data_dir).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            src, _, dst = line.partition("->")
            out[int(src)] = int(dst)
    return out


@dataclass
class Sq2Report:
    table: dict
    sq2_x7: int
    sq2_x9: str
    problems: list

    @property
    def ok(self) -> bool:
        return not self.problems


# transgressive fiber generators and their transgressions
TRANSGRESSION = {7: 8, 9: 10, 11: 12}


def sq2_check(data_dir=None) -> Sq2Report:
    """Degree sanity of the Sq^2 table and the deductions through transgression.

    Sq^2 commutes with transgression, and Sq^2 of a transgressive class of
    degree q is a multiple c of the transgressive class in degree q + 2.
    Comparing tau(c x_{q+2}) = c y_{q+3} with Sq^2 y_{q+1} fixes c.
    """
    table = load_sq2(data_dir)
    base = load_fibration(data_dir)["base"]
    problems = []
    for src, dst in table.items():
        if src not in base:
            problems.append(f"Sq^2 defined on missing class y{src}")
        if dst and (dst != src + 2 or dst not in base):
            problems.append(f"Sq^2 y{src} -> y{dst} does not raise degree by 2")

    def coefficient(q):
        image = table.get(TRANSGRESSION[q], 0)
        target = TRANSGRESSION[q + 2]
        if image not in (0, target):
            problems.append(f"Sq^2 y{TRANSGRESSION[q]} = y{image} is not transgression-compatible")
        return 1 if image == target else 0

    c7 = coefficient(7)
    c9 = coefficient(9)
    return Sq2Report(table, c7, "x11" if c9 else "0", problems)
