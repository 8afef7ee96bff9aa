"""Builders for the three families of coset graphs over complete graphs.

* ``build_faithful_cover``: L <= X_omega transitive on the other points,
  g = (omega omega') g0, giving a connected cover of K_n.
* ``build_dihedral_pseudocover``: L = <a^2, b> dihedral of order 2m on
  2m+1 points with g = (1,2)(3,4).
* ``build_abelian_pseudocover``: L = Z_a x Z_b on ab+1 points with the
  involution g = g1 g2.

All permutations are written in 1-based cycle notation and parsed, so the
generator formulas and the objects used in computation are the same text.
Each family also has verifiers for its structural claims returning a
``CheckReport``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .cosetgraph import CosetGraphSpec
from .errors import PreconditionError
from .group import PermGroup, classify_giant
from .perm import Permutation, commutator, parse_cycles

__all__ = [
    "CheckReport",
    "CoversnRecipe",
    "K2mRecipe",
    "KabRecipe",
    "COVERSN_PRESETS",
    "coversn_preset",
    "build_faithful_cover",
    "build_dihedral_pseudocover",
    "build_abelian_pseudocover",
    "predicted_group_kab",
    "predicted_group_k2m",
    "verify_zk_formula",
    "verify_consdih_commutator",
    "verify_k2m",
    "verify_kab",
    "parse_recipe",
    "load_recipe",
    "build_from_recipe",
]


@dataclass
class CheckReport:
    """Named list of (label, passed, detail) checks."""

    name: str
    checks: list = field(default_factory=list)

    def add(self, label, passed, detail=""):
        self.checks.append((label, bool(passed), detail))
        return bool(passed)

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(label, detail) for label, ok, detail in self.checks if not ok]

    def lines(self):
        out = []
        for label, ok, detail in self.checks:
            line = f"{'PASS' if ok else 'FAIL'} {self.name}: {label}"
            if detail:
                line += f" ({detail})"
            out.append(line)
        return out


def _cycle(points):
    return "(" + ",".join(str(p) for p in points) + ")"


# ---------------------------------------------------------------- covers


@dataclass
class CoversnRecipe:
    """L <= S_n fixing omega, transitive on the rest; g0 fixes omega and omega'.

    Points are 0-based; generator strings are parsed as 1-based cycles.
    """

    n: int
    L_generators: list
    omega: int = 0
    omega_prime: int = 1
    g0: Permutation | None = None

    @classmethod
    def from_strings(cls, n, L_generators, g0=None, omega=1, omega_prime=2):
        gens = [parse_cycles(s, n) for s in L_generators]
        g0p = parse_cycles(g0, n) if g0 else None
        return cls(n, gens, omega - 1, omega_prime - 1, g0p)

    def problems(self):
        n = self.n
        out = []
        if n < 4:
            out.append(f"n = {n} must be at least 4")
            return out
        for name, p in (("omega", self.omega), ("omega_prime", self.omega_prime)):
            if not 0 <= p < n:
                out.append(f"{name} = {p + 1} out of range")
        if out:
            return out
        if self.omega == self.omega_prime:
            out.append("omega and omega_prime must differ")
        for x in self.L_generators:
            if x.degree != n:
                out.append(f"generator {x} has degree {x.degree}, expected {n}")
                return out
        if self.g0 is not None and self.g0.degree != n:
            out.append(f"g0 has degree {self.g0.degree}, expected {n}")
            return out
        L = self.group()
        w, w2 = self.omega, self.omega_prime
        for x in self.L_generators:
            if x[w] != w:
                out.append(f"generator {x} of L moves omega = {w + 1}")
        rest = set(range(n)) - {w}
        if L.orbit(w2) != rest:
            out.append("L is not transitive on the points other than omega")
        g0 = self.g0_or_identity()
        if g0[w] != w or g0[w2] != w2:
            out.append(f"g0 = {g0} must fix omega and omega_prime")
        if not L.contains(g0 * g0):
            out.append(f"g0^2 = {g0 * g0} is not in L")
        stab = L.point_stabilizer(w2)
        for x in stab.nontrivial_generators:
            if not stab.contains(x ** g0):
                out.append(f"g0 does not normalize L_omega' (fails on {x})")
                break
        return out

    def group(self):
        return PermGroup(self.L_generators, self.n)

    def g0_or_identity(self):
        return self.g0 if self.g0 is not None else Permutation.identity(self.n)

    def g(self):
        t = Permutation.from_cycles([(self.omega, self.omega_prime)], self.n, one_based=False)
        return t * self.g0_or_identity()


COVERSN_PRESETS = {
    # regular cyclic subgroup of Sym(2..n); any n >= 4
    "cyclic": None,
    # the transitive subgroups of S_4 used as L for n = 5
    "z2z2": ["(2,3)(4,5)", "(2,4)(3,5)"],
    "z4": ["(2,3,4,5)"],
    "d8": ["(2,3,4,5)", "(3,5)"],
    "a4": ["(2,3,4)", "(2,3)(4,5)"],
}


def coversn_preset(name, n, g0=None):
    """Recipe for a named choice of L (``cyclic`` works for any n >= 4)."""
    if name not in COVERSN_PRESETS:
        raise PreconditionError(
            f"unknown preset {name!r}; choose from {sorted(COVERSN_PRESETS)}")
    gens = COVERSN_PRESETS[name]
    if gens is None:
        gens = [_cycle(range(2, n + 1))]
    elif n != 5:
        raise PreconditionError(f"preset {name!r} is defined for n = 5 only")
    return CoversnRecipe.from_strings(n, gens, g0)


def build_faithful_cover(recipe, vertex_cap=None):
    """Cos(G, L, LgL) with g = (omega omega') g0 and G = <L, g>."""
    problems = recipe.problems()
    if problems:
        raise PreconditionError("; ".join(problems))
    L = recipe.group()
    g = recipe.g()
    G = PermGroup(L.nontrivial_generators + [g], recipe.n)
    kw = {} if vertex_cap is None else {"vertex_cap": vertex_cap}
    return CosetGraphSpec(G, L, g, omega=recipe.omega, **kw)


# ---------------------------------------------------------------- dihedral


@dataclass(frozen=True)
class K2mRecipe:
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise PreconditionError(f"m = {self.m} must be at least 2")

    @property
    def n(self):
        return 2 * self.m + 1

    def a(self):
        return parse_cycles(_cycle(range(2, self.n + 1)), self.n)

    def b(self):
        m = self.m
        pairs = "".join(_cycle((k, 2 * m + 4 - k)) for k in range(3, m + 2))
        return parse_cycles(pairs, self.n)

    def g(self):
        return parse_cycles("(1,2)(3,4)", self.n)

    def L(self):
        a = self.a()
        return PermGroup([a * a, self.b()], self.n)


def build_dihedral_pseudocover(recipe, vertex_cap=None):
    L = recipe.L()
    g = recipe.g()
    G = PermGroup(L.nontrivial_generators + [g], recipe.n)
    kw = {} if vertex_cap is None else {"vertex_cap": vertex_cap}
    return CosetGraphSpec(G, L, g, omega=0, **kw)


def predicted_group_k2m(m):
    """'symmetric' for even m, 'gl32' for m = 3, 'alternating' for odd m >= 5."""
    if m < 2:
        raise PreconditionError(f"m = {m} must be at least 2")
    if m % 2 == 0:
        return "symmetric"
    if m == 3:
        return "gl32"
    return "alternating"


def verify_consdih_commutator(recipe):
    """y = [a^2 b, g] = (1,2m,2)(3,4)(2m-1,2m-2) and y^2 is a 3-cycle (m >= 4)."""
    m = recipe.m
    if m < 4:
        raise PreconditionError(f"the commutator formula needs m >= 4, got m = {m}")
    n = recipe.n
    a, b, g = recipe.a(), recipe.b(), recipe.g()
    y = commutator(a * a * b, g)
    expected = parse_cycles(f"(1,{2 * m},2)(3,4)({2 * m - 1},{2 * m - 2})", n)
    rep = CheckReport(f"consdih m={m}")
    rep.add("[a^2 b, g] closed form", y == expected, f"got {y}, expected {expected}")
    y2 = y * y
    rep.add("y^2 is a 3-cycle", sorted(y2.cycle_type()) == [1] * (n - 3) + [3], f"y^2 = {y2}")
    return rep


def verify_k2m(recipe):
    """All structural claims about the dihedral family at one m."""
    m, n = recipe.m, recipe.n
    spec = build_dihedral_pseudocover(recipe)
    G, L, g = spec.G, spec.L, spec.g
    rep = CheckReport(f"k2m m={m}")
    rep.add("|L| = 2m", L.order() == 2 * m, f"|L| = {L.order()}")
    rep.add("g is an involution", (g * g).is_identity())
    meet = L.order() // _index_by_orbit(L, g)
    rep.add("L meet L^g is trivial", meet == 1, f"|L meet L^g| = {meet}")
    rep.add("G is 2-transitive", G.is_2_transitive())
    pred = predicted_group_k2m(m)
    got = classify_giant(G)
    if pred == "gl32":
        ok = got == "other" and G.order() == 168
        rep.add("G has order 168", ok, f"|G| = {G.order()}")
    else:
        want = factorial(n) // (2 if pred == "alternating" else 1)
        rep.add(f"G is {pred}", got == pred and G.order() == want,
                f"classified {got}, |G| = {G.order()}")
    if m >= 4:
        for line in verify_consdih_commutator(recipe).checks:
            rep.add(*line)
    return rep


def _index_by_orbit(L, g):
    from .quotient import subgroup_index_by_orbit
    return subgroup_index_by_orbit(L, g)


# ---------------------------------------------------------------- abelian


@dataclass(frozen=True)
class KabRecipe:
    a: int
    b: int

    def __post_init__(self):
        if not 1 < self.a <= self.b:
            raise PreconditionError(f"need 1 < a <= b, got a = {self.a}, b = {self.b}")

    @property
    def n(self):
        return self.a * self.b + 1

    def x_text(self):
        a, b = self.a, self.b
        return "".join(_cycle(range(k * b + 1, (k + 1) * b + 1)) for k in range(a - 1))

    def y_text(self):
        a, b = self.a, self.b
        return _cycle(range((a - 1) * b + 1, (a - 1) * b + a + 1))

    def g1_text(self):
        a, b = self.a, self.b
        return "".join(_cycle((k * b, k * b + 1)) for k in range(1, a))

    def g2_text(self):
        a, b = self.a, self.b
        base = (a - 1) * b + a
        return "".join(_cycle((t, base + t)) for t in range(1, b - a + 2))

    def x(self):
        return parse_cycles(self.x_text(), self.n)

    def y(self):
        return parse_cycles(self.y_text(), self.n)

    def g1(self):
        return parse_cycles(self.g1_text(), self.n)

    def g2(self):
        return parse_cycles(self.g2_text(), self.n)

    def g(self):
        return self.g1() * self.g2()

    def L(self):
        return PermGroup([self.x(), self.y()], self.n)


def build_abelian_pseudocover(recipe, vertex_cap=None):
    L = recipe.L()
    g = recipe.g()
    G = PermGroup(L.nontrivial_generators + [g], recipe.n)
    kw = {} if vertex_cap is None else {"vertex_cap": vertex_cap}
    return CosetGraphSpec(G, L, g, omega=recipe.n - 1, **kw)


def predicted_group_kab(a, b):
    """'alternating' iff a is odd and b is even."""
    if not 1 < a <= b:
        raise PreconditionError(f"need 1 < a <= b, got a = {a}, b = {b}")
    return "alternating" if a % 2 == 1 and b % 2 == 0 else "symmetric"


def zk_closed_form(recipe, k):
    a, b = recipe.a, recipe.b
    pts = [(a - k - 1) * b + 1] + list(range((a - 1) * b + 2, (a - 1) * b + a + 1))
    return parse_cycles(_cycle(pts), recipe.n)


def verify_zk_formula(recipe):
    """z_k = y^((gx)^k) against its closed form, and the subgroup P they generate."""
    a, b, n = recipe.a, recipe.b, recipe.n
    x, y, g = recipe.x(), recipe.y(), recipe.g()
    gx = g * x
    rep = CheckReport(f"zk a={a} b={b}")
    t = Permutation.identity(n)
    zs = []
    for k in range(a):
        z = y ** t
        want = zk_closed_form(recipe, k)
        rep.add(f"z_{k} closed form", z == want, f"got {z}, expected {want}")
        zs.append(z)
        t = t * gx
    P = PermGroup([x, y] + zs[1:], n)
    top = (a - 1) * b + a
    moved = set()
    for s in P.nontrivial_generators:
        moved |= s.support()
    rep.add(f"P acts on 1..{top} only", moved <= set(range(top)),
            f"moved points {sorted(p + 1 for p in moved if p >= top)}")
    rep.add("P fixes n", all(s[n - 1] == n - 1 for s in P.nontrivial_generators))
    alt = factorial(top) // 2
    rep.add(f"|A_{top}| divides |P|", P.order() % alt == 0, f"|P| = {P.order()}")
    rep.add("y fixes 1..b and n",
            all(y[p] == p for p in range(b)) and y[n - 1] == n - 1)
    return rep


def verify_kab(recipe):
    """All structural claims about the abelian family at one (a, b)."""
    a, b, n = recipe.a, recipe.b, recipe.n
    spec = build_abelian_pseudocover(recipe)
    G, L, g = spec.G, spec.L, spec.g
    x, y, g1, g2 = recipe.x(), recipe.y(), recipe.g1(), recipe.g2()
    rep = CheckReport(f"kab a={a} b={b}")
    rep.add("g^2 = 1", (g * g).is_identity())
    rep.add("[g1, g2] = 1", commutator(g1, g2).is_identity())
    rep.add("[x, y] = 1", commutator(x, y).is_identity())
    rep.add("|L| = ab", L.order() == a * b, f"|L| = {L.order()}")
    meet = L.order() // _index_by_orbit(L, g)
    rep.add("L meet L^g is trivial", meet == 1, f"|L meet L^g| = {meet}")
    rep.add("L fixes n", all(s[n - 1] == n - 1 for s in L.nontrivial_generators))
    rep.add("G is transitive", G.is_transitive())
    rep.add("G is 2-transitive", G.is_2_transitive())
    pred = predicted_group_kab(a, b)
    got = classify_giant(G)
    want = factorial(n) // (2 if pred == "alternating" else 1)
    rep.add(f"G is {pred}", got == pred and G.order() == want,
            f"classified {got}, |G| = {G.order()}")
    for line in verify_zk_formula(recipe).checks:
        rep.add(*line)
    return rep


# ---------------------------------------------------------------- recipe files


def parse_recipe(text):
    """Parse ``key = value`` lines (``#`` comments) into a recipe object.

    Recognized keys: kind (coversn | k2m | kab), n, m, a, b, L (a preset name
    or ``;``-separated cycle strings), g0, omega, omega_prime.
    """
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise PreconditionError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in fields:
            raise PreconditionError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value
    kind = fields.pop("kind", None)
    allowed = {
        "coversn": {"n", "L", "g0", "omega", "omega_prime"},
        "k2m": {"m"},
        "kab": {"a", "b"},
    }
    if kind not in allowed:
        raise PreconditionError(f"kind must be one of {sorted(allowed)}, got {kind!r}")
    extra = set(fields) - allowed[kind]
    if extra:
        raise PreconditionError(f"unknown keys for kind {kind}: {sorted(extra)}")

    def intval(key, default=None):
        if key not in fields:
            if default is None:
                raise PreconditionError(f"missing key {key!r}")
            return default
        try:
            return int(fields[key])
        except ValueError:
            raise PreconditionError(f"{key} must be an integer, got {fields[key]!r}") from None

    if kind == "k2m":
        return K2mRecipe(intval("m"))
    if kind == "kab":
        return KabRecipe(intval("a"), intval("b"))
    n = intval("n")
    L = fields.get("L", "cyclic")
    g0 = fields.get("g0") or None
    if L in COVERSN_PRESETS:
        recipe = coversn_preset(L, n)
        gens = [str(s) for s in recipe.L_generators]
    else:
        gens = [s.strip() for s in L.split(";") if s.strip()]
    return CoversnRecipe.from_strings(n, gens, g0, intval("omega", 1), intval("omega_prime", 2))


def load_recipe(path):
    with open(path, encoding="utf-8") as fh:
        return parse_recipe(fh.read())


def build_from_recipe(recipe, vertex_cap=None):
    if isinstance(recipe, CoversnRecipe):
        return build_faithful_cover(recipe, vertex_cap)
    if isinstance(recipe, K2mRecipe):
        return build_dihedral_pseudocover(recipe, vertex_cap)
    if isinstance(recipe, KabRecipe):
        return build_abelian_pseudocover(recipe, vertex_cap)
    raise TypeError(f"not a recipe: {recipe!r}")
