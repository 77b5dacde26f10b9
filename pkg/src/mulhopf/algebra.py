"""Algebras over an exact field, possibly without unit, and their modules.

The objects here are spans of a declared basis.  A basis is either finite
(ids in declaration order) or an oracle: a countable family with a
computable membership test and finite windows ``window_ids(n)``.  Every
check states its verdict relative to the ids it actually inspected:
``proven`` when those ids are the whole (finite) basis, ``holds_on_window``
otherwise, ``failed`` with a witness that re-checks.

Elements are sparse dicts ``basis id -> scalar`` in canonical form.  The
three structural properties that drive everything downstream are checked
here: associativity, idempotency (every element is a sum of products,
with stored decomposition witnesses), and non-degeneracy (no one-sided
annihilators).  Idempotency witnesses double as Sweedler decompositions
``a = sum a1 * a2`` for the multiplier and extension machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import GaussianSolver, SparseMatrix, vec_canonical


class InputError(ValueError):
    """Malformed user input (unknown basis id, bad window, parse trouble)."""


class WindowInsufficiency(RuntimeError):
    """The requested window cannot support the computation; enlarging may help."""


class InvariantViolation(ValueError):
    """Constructor rejection; carries the verdict whose witness re-checks."""

    def __init__(self, verdict):
        super().__init__(f"{verdict.axiom}: {verdict.detail or 'invariant violated'}")
        self.verdict = verdict


@dataclass(frozen=True)
class Verdict:
    """Outcome of one axiom check on one window."""

    axiom: str
    status: str  # "proven" | "holds_on_window" | "failed"
    window: str
    witness: tuple | None = None
    detail: str = ""

    @property
    def ok(self):
        return self.status != "failed"

    def __str__(self):
        head = f"{self.axiom}: {self.status} [{self.window}]"
        if self.witness is not None:
            head += f" witness={witness_text(self.witness)}"
        if self.detail:
            head += f" ({self.detail})"
        return head


def witness_text(witness) -> str:
    return ", ".join(str(w) for w in witness)


class FiniteBasis:
    finite = True

    def __init__(self, ids):
        self.ids = tuple(ids)
        if len(set(self.ids)) != len(self.ids):
            raise InputError("duplicate basis ids")
        self._index = {b: i for i, b in enumerate(self.ids)}

    def window(self, n=None):
        return self.ids

    def __contains__(self, bid):
        return bid in self._index

    def sort_key(self, bid):
        return self._index[bid]

    def describe(self):
        return f"basis({len(self.ids)})"


class OracleBasis:
    """Countable basis given by a membership test and a window function."""

    finite = False

    def __init__(self, contains, window, describe="oracle"):
        self._contains = contains
        self._window = window
        self._describe = describe

    def window(self, n=None):
        if n is None:
            raise WindowInsufficiency("oracle basis needs an explicit window")
        return tuple(self._window(n))

    def __contains__(self, bid):
        return self._contains(bid)

    def sort_key(self, bid):
        return bid

    def describe(self):
        return self._describe


class Space:
    """Free k-module on a declared basis; owns element construction."""

    def __init__(self, field, basis, name="V", fmt_id=str):
        self.field = field
        self.basis = basis
        self.name = name
        self.fmt_id = fmt_id

    @property
    def finite(self):
        return self.basis.finite

    def window_ids(self, n=None):
        return self.basis.window(n)

    def covers_fully(self, ids):
        return self.finite and set(ids) == set(self.basis.ids)

    def baseline(self, ids):
        return "proven" if self.covers_fully(ids) else "holds_on_window"

    def window_label(self, ids):
        if self.covers_fully(ids):
            return f"full {self.basis.describe()}"
        return f"{len(tuple(ids))} ids of {self.basis.describe()}"

    def zero(self):
        return Element(self, {})

    def basis_element(self, bid):
        if bid not in self.basis:
            raise InputError(f"{bid!r} is not a basis id of {self.name}")
        return Element(self, {bid: self.field.one})

    def element(self, data) -> "Element":
        for bid in data:
            if bid not in self.basis:
                raise InputError(f"{bid!r} is not a basis id of {self.name}")
        return Element(self, vec_canonical(self.field, data))

    def sort_key(self, bid):
        return self.basis.sort_key(bid)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} over {self.field.name}>"


class Element:
    """Sparse vector in a Space; multiplication when the space is an Algebra."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space, coeffs):
        self.space = space
        self.coeffs = coeffs

    def is_zero(self):
        return not self.coeffs

    @property
    def support(self):
        return self.coeffs.keys()

    def sorted_items(self):
        key = self.space.sort_key
        return sorted(self.coeffs.items(), key=lambda kv: key(kv[0]))

    def __add__(self, other):
        _same_space(self, other)
        field = self.space.field
        out = dict(self.coeffs)
        for bid, v in other.coeffs.items():
            s = field.add(out.get(bid, field.zero), v)
            if s:
                out[bid] = s
            else:
                out.pop(bid, None)
        return Element(self.space, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        field = self.space.field
        return Element(self.space, {b: field.neg(v) for b, v in self.coeffs.items()})

    def scale(self, scalar):
        field = self.space.field
        scalar = field.coerce(scalar)
        if not scalar:
            return Element(self.space, {})
        return Element(self.space, {b: field.mul(scalar, v) for b, v in self.coeffs.items()})

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __mul__(self, other):
        if isinstance(other, Element):
            alg = self.space
            if not isinstance(alg, Algebra):
                raise InputError(f"{alg.name} is not an algebra")
            _same_space(self, other)
            return alg.element_mul(self, other)
        return self.scale(other)

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and other.space is self.space
            and other.coeffs == self.coeffs
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((id(self.space), tuple(sorted(self.coeffs.items(), key=repr))))

    def __str__(self):
        if not self.coeffs:
            return "0"
        field, fmt = self.space.field, self.space.fmt_id
        return " + ".join(f"{field.format(v)}*{fmt(b)}" for b, v in self.sorted_items())

    __repr__ = __str__


def _same_space(x, y):
    if x.space is not y.space:
        raise InputError(f"elements of {x.space.name} and {y.space.name} do not mix")


class Algebra(Space):
    """Space with a bilinear multiplication given on basis ids.

    ``unit`` is optional (most examples here have none); ``local_unit_for``
    optionally realizes a complete set of local units as a hook mapping a
    window id tuple to an element acting as a two-sided unit on everything
    supported inside that window.
    """

    def __init__(self, field, basis, mul_rule, unit=None, local_unit_for=None,
                 name="A", fmt_id=str):
        super().__init__(field, basis, name=name, fmt_id=fmt_id)
        self._mul_rule = mul_rule
        self._mul_cache: dict = {}
        self._span_cache: dict = {}
        self._unit_data = unit
        self._local_unit_for = local_unit_for
        self._lu_cache: dict = {}

    @property
    def unit(self):
        if self._unit_data is None:
            return None
        if isinstance(self._unit_data, Element):
            return self._unit_data
        self._unit_data = self.element(self._unit_data)
        return self._unit_data

    @property
    def has_local_units(self):
        return self._local_unit_for is not None or self.unit is not None

    def local_unit(self, ids):
        """Two-sided unit for elements supported in ``ids``, if certified."""
        if self._local_unit_for is not None:
            key = tuple(ids)
            cached = self._lu_cache.get(key)
            if cached is None:
                cached = self._lu_cache[key] = self.element(self._local_unit_for(key))
            return cached
        if self.unit is not None:
            return self.unit
        return None

    def mul_basis(self, i, j) -> Element:
        key = (i, j)
        out = self._mul_cache.get(key)
        if out is None:
            out = self._mul_cache[key] = Element(
                self, vec_canonical(self.field, self._mul_rule(i, j))
            )
        return out

    def element_mul(self, x: Element, y: Element) -> Element:
        field = self.field
        acc: dict = {}
        for i, ci in x.coeffs.items():
            for j, cj in y.coeffs.items():
                c = field.mul(ci, cj)
                for bid, v in self.mul_basis(i, j).coeffs.items():
                    s = field.add(acc.get(bid, field.zero), field.mul(c, v))
                    if s:
                        acc[bid] = s
                    else:
                        acc.pop(bid, None)
        return Element(self, acc)

    def product_span(self, ids, left_ids=None):
        """Cached solver for writing elements as sums of products.

        Columns are pairs (i, j) with i from ``left_ids`` (default ``ids``)
        and j from ``ids``; the column content is the product e_i * e_j.
        """
        left_ids = tuple(ids) if left_ids is None else tuple(left_ids)
        key = (left_ids, tuple(ids))
        span = self._span_cache.get(key)
        if span is None:
            cols = []
            for i in left_ids:
                for j in ids:
                    prod = self.mul_basis(i, j)
                    if not prod.is_zero():
                        cols.append(((i, j), prod.coeffs))
            span = GaussianSolver(SparseMatrix.from_columns(self.field, cols))
            self._span_cache[key] = span
        return span


def finite_algebra(field, ids, table, unit=None, name="A", fmt_id=str) -> Algebra:
    """Finite-tier constructor; ``table`` maps (i, j) to a coefficient dict."""
    basis = FiniteBasis(ids)
    for (i, j), coeffs in table.items():
        if i not in basis or j not in basis:
            raise InputError(f"product rule for unknown pair ({i!r}, {j!r})")
        for bid in coeffs:
            if bid not in basis:
                raise InputError(f"product ({i!r}, {j!r}) leaves the declared basis")

    def rule(i, j):
        return table.get((i, j), {})

    return Algebra(field, basis, rule, unit=unit, name=name, fmt_id=fmt_id)


def oracle_algebra(field, contains, window, mul_rule, local_unit_for=None,
                   describe="oracle", name="A", fmt_id=str) -> Algebra:
    basis = OracleBasis(contains, window, describe)
    return Algebra(field, basis, mul_rule, local_unit_for=local_unit_for,
                   name=name, fmt_id=fmt_id)


def scalar_algebra(field) -> Algebra:
    """The base field as a one-dimensional algebra with basis id "1"."""
    return finite_algebra(field, ["1"], {("1", "1"): {"1": field.one}},
                          unit={"1": field.one}, name=f"k[{field.name}]")


def resolve_window(space, window):
    """Accept an int (oracle window parameter) or an explicit id tuple."""
    if window is None or isinstance(window, int):
        return tuple(space.window_ids(window))
    return tuple(window)


def sweedler_decompose(alg: Algebra, elem: Element, window, left_window=None):
    """Write ``elem = sum c * (e_i * e_j)`` over window pairs, or None.

    The decomposition is the pivot-order first solution, so repeated calls
    agree; downstream modules rely on that determinism.
    """
    ids = resolve_window(alg, window)
    left = ids if left_window is None else resolve_window(alg, left_window)
    span = alg.product_span(ids, left)
    sol = span.solve(elem.coeffs)
    if sol is None:
        return None
    key = alg.sort_key
    return [(c, i, j) for (i, j), c in
            sorted(sol.items(), key=lambda kv: (key(kv[0][0]), key(kv[0][1])))]


# ---------------------------------------------------------------------------
# structural checks


def check_associativity(alg: Algebra, window=None) -> Verdict:
    ids = resolve_window(alg, window)
    label = alg.window_label(ids)
    for i in ids:
        for j in ids:
            ej = alg.basis_element(j)
            eij = alg.mul_basis(i, j)
            for k in ids:
                left = eij * alg.basis_element(k)
                right = alg.basis_element(i) * alg.mul_basis(j, k)
                if left != right:
                    return Verdict(
                        "associativity", "failed", label,
                        witness=(alg.basis_element(i), ej, alg.basis_element(k)),
                        detail=f"(ei*ej)*ek = {left} but ei*(ej*ek) = {right}",
                    )
    return Verdict("associativity", alg.baseline(ids), label)


def check_idempotent(alg: Algebra, window=None) -> Verdict:
    """A = A*A on the window, with stored decomposition witnesses."""
    ids = resolve_window(alg, window)
    label = alg.window_label(ids)
    for t in ids:
        if sweedler_decompose(alg, alg.basis_element(t), ids) is None:
            return Verdict(
                "idempotency", "failed", label,
                witness=(alg.basis_element(t),),
                detail="basis element is not a sum of window products",
            )
    return Verdict("idempotency", alg.baseline(ids), label)


def check_nondegenerate(alg: Algebra, window=None, probe_window=None) -> Verdict:
    """No nonzero one-sided annihilator among window combinations.

    ``probe_window`` defaults to the window; oracle callers may pass an
    enlarged probe set.  A stored unit or local-unit certificate proves
    non-degeneracy outright.
    """
    ids = resolve_window(alg, window)
    label = alg.window_label(ids)
    if alg.has_local_units:
        return Verdict("non-degeneracy", "proven", label,
                       detail="unit or complete local units certified")
    probes = ids if probe_window is None else resolve_window(alg, probe_window)
    for side in ("right-mult", "left-mult"):
        cols = []
        for t in ids:
            col: dict = {}
            for j in probes:
                prod = (alg.basis_element(t) * alg.basis_element(j)
                        if side == "right-mult"
                        else alg.basis_element(j) * alg.basis_element(t))
                for bid, v in prod.coeffs.items():
                    col[(j, bid)] = v
            cols.append((t, col))
        kernel = GaussianSolver(SparseMatrix.from_columns(alg.field, cols)).kernel_basis()
        if kernel:
            witness = Element(alg, vec_canonical(alg.field, kernel[0]))
            which = "x*a" if side == "right-mult" else "a*x"
            return Verdict(
                "non-degeneracy", "failed", label,
                witness=(witness,),
                detail=f"{which} = 0 for every probe a",
            )
    return Verdict("non-degeneracy", alg.baseline(ids), label)


def local_units_witness(alg: Algebra, probes, window=None, side="both"):
    """Window elements acting as units on each probe, or None.

    Searches the window span for e with a*e = a (side "right"), e*a = a
    (side "left"), or both.  Returns the deduplicated witness list.
    """
    ids = resolve_window(alg, window)
    witnesses: list = []
    seen = set()
    sides = ("right", "left") if side == "both" else (side,)
    for probe in probes:
        if probe.is_zero():
            continue
        for s in sides:
            cols = []
            for t in ids:
                et = alg.basis_element(t)
                prod = probe * et if s == "right" else et * probe
                if not prod.is_zero():
                    cols.append((t, prod.coeffs))
            sol = GaussianSolver(SparseMatrix.from_columns(alg.field, cols)).solve(probe.coeffs)
            if sol is None:
                return None
            e = Element(alg, vec_canonical(alg.field, sol))
            tag = tuple(sorted(e.coeffs.items(), key=lambda kv: alg.sort_key(kv[0])))
            if tag not in seen:
                seen.add(tag)
                witnesses.append(e)
    return witnesses


def check_local_units(alg: Algebra, window=None) -> Verdict:
    """Unit or local-unit evidence on the window, as a verdict.

    A declared unit or certificate hook is verified against every window
    basis element.  Without either, the window span is searched for
    per-probe units; that search only ever yields window-grade evidence,
    so the status stays at holds_on_window even for finite algebras.
    """
    ids = resolve_window(alg, window)
    label = alg.window_label(ids)
    probes = [alg.basis_element(i) for i in ids]
    if alg.unit is not None:
        u = alg.unit
        for p in probes:
            if u * p != p or p * u != p:
                return Verdict("local units", "failed", label, witness=(p,),
                               detail="declared unit does not act as a unit")
        return Verdict("local units", "proven", label, detail="unit element")
    if alg.has_local_units:
        e = alg.local_unit(ids)
        for p in probes:
            if e * p != p or p * e != p:
                return Verdict("local units", "failed", label, witness=(p, e),
                               detail="certified local unit fails on a probe")
        return Verdict("local units", alg.baseline(ids), label,
                       detail="certified local unit verified")
    found = local_units_witness(alg, probes, window=ids)
    if found is None:
        return Verdict("local units", "failed", label,
                       detail="no element of the window span acts as a unit "
                              "on some basis element")
    return Verdict("local units", "holds_on_window", label,
                   detail=f"per-probe units found ({len(found)} distinct)")


# ---------------------------------------------------------------------------
# modules


class ModuleStructure:
    """One-sided module over an algebra, action given on basis ids.

    ``side`` is "right" (m <| a) or "left" (a |> m); ``act`` always takes
    (module element, algebra element) regardless of side.
    """

    def __init__(self, space: Space, algebra: Algebra, side, act_rule, name=None):
        if side not in ("right", "left"):
            raise InputError(f"side must be 'right' or 'left', not {side!r}")
        self.space = space
        self.algebra = algebra
        self.side = side
        self._act_rule = act_rule
        self._act_cache: dict = {}
        self._span_cache: dict = {}
        self.name = name or f"{space.name}:{side} {algebra.name}-module"

    def act_basis(self, m_id, a_id) -> Element:
        key = (m_id, a_id)
        out = self._act_cache.get(key)
        if out is None:
            out = self._act_cache[key] = Element(
                self.space, vec_canonical(self.space.field, self._act_rule(m_id, a_id))
            )
        return out

    def act(self, m: Element, a: Element) -> Element:
        if m.space is not self.space or a.space is not self.algebra:
            raise InputError("act() wants (module element, algebra element)")
        field = self.space.field
        acc: dict = {}
        for m_id, cm in m.coeffs.items():
            for a_id, ca in a.coeffs.items():
                c = field.mul(cm, ca)
                for bid, v in self.act_basis(m_id, a_id).coeffs.items():
                    s = field.add(acc.get(bid, field.zero), field.mul(c, v))
                    if s:
                        acc[bid] = s
                    else:
                        acc.pop(bid, None)
        return Element(self.space, acc)

    def action_span(self, m_ids, a_ids):
        """Solver for decompositions m = sum c * (e_m acted by e_a)."""
        key = (tuple(m_ids), tuple(a_ids))
        span = self._span_cache.get(key)
        if span is None:
            cols = []
            for mi in m_ids:
                for aj in a_ids:
                    hit = self.act_basis(mi, aj)
                    if not hit.is_zero():
                        cols.append(((mi, aj), hit.coeffs))
            span = GaussianSolver(SparseMatrix.from_columns(self.space.field, cols))
            self._span_cache[key] = span
        return span

    def decompose(self, m: Element, m_ids, a_ids):
        sol = self.action_span(tuple(m_ids), tuple(a_ids)).solve(m.coeffs)
        if sol is None:
            return None
        mkey, akey = self.space.sort_key, self.algebra.sort_key
        return [(c, mi, aj) for (mi, aj), c in
                sorted(sol.items(), key=lambda kv: (mkey(kv[0][0]), akey(kv[0][1])))]


def regular_module(alg: Algebra, side="right") -> ModuleStructure:
    if side == "right":
        rule = lambda m_id, a_id: alg.mul_basis(m_id, a_id).coeffs
    else:
        rule = lambda m_id, a_id: alg.mul_basis(a_id, m_id).coeffs
    return ModuleStructure(alg, alg, side, rule, name=f"{alg.name} ({side} regular)")


def check_module(module: ModuleStructure, window_m=None, window_a=None,
                 probe_window=None, laws=None) -> dict:
    """Action associativity, idempotency M = MA, and non-degeneracy.

    ``laws`` restricts the run to a subset of {"associativity",
    "idempotency", "nondegeneracy"}; the associativity scan is cubic in
    the window and dominates on dense modules, so large sweeps that only
    need one verdict can skip the rest.
    """
    wanted = ("associativity", "idempotency", "nondegeneracy") if laws is None else tuple(laws)
    unknown = [w for w in wanted if w not in ("associativity", "idempotency", "nondegeneracy")]
    if unknown:
        raise InputError(f"check_module: unknown law {unknown[0]!r}")
    m_ids = resolve_window(module.space, window_m)
    a_ids = resolve_window(module.algebra, window_a)
    label = f"{module.space.window_label(m_ids)} / {module.algebra.window_label(a_ids)}"
    base = ("proven" if module.space.covers_fully(m_ids)
            and module.algebra.covers_fully(a_ids) else "holds_on_window")
    out = {}

    if "associativity" in wanted:
        assoc = None
        for mi in m_ids:
            if assoc:
                break
            em = module.space.basis_element(mi)
            for i in a_ids:
                ei = module.algebra.basis_element(i)
                first = module.act(em, ei)
                for j in a_ids:
                    ej = module.algebra.basis_element(j)
                    if module.side == "right":
                        lhs = module.act(first, ej)            # (m<|a)<|b
                        rhs = module.act(em, ei * ej)          # m<|(ab)
                    else:
                        lhs = module.act(module.act(em, ej), ei)  # a|>(b|>m)
                        rhs = module.act(em, ei * ej)             # (ab)|>m
                    if lhs != rhs:
                        assoc = Verdict("module associativity", "failed", label,
                                        witness=(em, ei, ej),
                                        detail=f"{lhs} vs {rhs}")
                        break
                if assoc:
                    break
        out["associativity"] = assoc or Verdict("module associativity", base, label)

    if "idempotency" in wanted:
        idem = None
        for mi in m_ids:
            if module.decompose(module.space.basis_element(mi), m_ids, a_ids) is None:
                idem = Verdict("module idempotency", "failed", label,
                               witness=(module.space.basis_element(mi),),
                               detail="not a sum of acted window elements")
                break
        out["idempotency"] = idem or Verdict("module idempotency", base, label)

    if "nondegeneracy" in wanted:
        probes = a_ids if probe_window is None else resolve_window(module.algebra, probe_window)
        cols = []
        for mi in m_ids:
            col: dict = {}
            for aj in probes:
                for bid, v in module.act_basis(mi, aj).coeffs.items():
                    col[(aj, bid)] = v
            cols.append((mi, col))
        kernel = GaussianSolver(SparseMatrix.from_columns(module.space.field, cols)).kernel_basis()
        if kernel:
            witness = Element(module.space, vec_canonical(module.space.field, kernel[0]))
            out["nondegeneracy"] = Verdict(
                "module non-degeneracy", "failed", label, witness=(witness,),
                detail="annihilated by every probe")
        else:
            out["nondegeneracy"] = Verdict("module non-degeneracy", base, label)
    return out


# ---------------------------------------------------------------------------
# tensor constructions


def _tensor_cache(left) -> dict:
    cache = getattr(left, "_tensor_right", None)
    if cache is None:
        cache = left._tensor_right = {}
    return cache


def _pair_fmt(left, right):
    return lambda bid: f"({left.fmt_id(bid[0])},{right.fmt_id(bid[1])})"


def _pair_basis(left: Space, right: Space):
    if left.finite and right.finite:
        return FiniteBasis([(i, j) for i in left.basis.ids for j in right.basis.ids])
    return OracleBasis(
        contains=lambda bid: (isinstance(bid, tuple) and len(bid) == 2
                              and bid[0] in left.basis and bid[1] in right.basis),
        window=lambda n: tuple((i, j) for i in left.window_ids(n)
                               for j in right.window_ids(n)),
        describe=f"{left.basis.describe()}(x){right.basis.describe()}",
    )


def tensor_space(left: Space, right: Space) -> Space:
    cache = _tensor_cache(left)
    key = ("space", id(right))
    sp = cache.get(key)
    if sp is None:
        sp = Space(left.field, _pair_basis(left, right),
                   name=f"{left.name}(x){right.name}", fmt_id=_pair_fmt(left, right))
        sp.factors = (left, right)
        cache[key] = (sp, right)  # keep right alive so id() stays valid
    else:
        sp = sp[0]
    return sp


def tensor_algebra(left: Algebra, right: Algebra) -> Algebra:
    """Componentwise product on pair ids; unit and local units when both have them."""
    cache = _tensor_cache(left)
    key = ("algebra", id(right))
    hit = cache.get(key)
    if hit is not None:
        return hit[0]
    if left.field != right.field:
        raise InputError("tensor factors over different fields")

    def rule(p, q):
        (i1, j1), (i2, j2) = p, q
        a = left.mul_basis(i1, i2)
        b = right.mul_basis(j1, j2)
        f = left.field
        return {(u, v): f.mul(ca, cb)
                for u, ca in a.coeffs.items() for v, cb in b.coeffs.items()}

    unit = None
    if left.unit is not None and right.unit is not None:
        unit = {(u, v): left.field.mul(cu, cv)
                for u, cu in left.unit.coeffs.items()
                for v, cv in right.unit.coeffs.items()}

    local = None
    if left._local_unit_for is not None or right._local_unit_for is not None:
        if left.has_local_units and right.has_local_units:
            def local(ids):
                lids = tuple(sorted({i for i, _ in ids}, key=left.sort_key))
                rids = tuple(sorted({j for _, j in ids}, key=right.sort_key))
                el = left.local_unit(lids)
                er = right.local_unit(rids)
                f = left.field
                return {(u, v): f.mul(cu, cv)
                        for u, cu in el.coeffs.items() for v, cv in er.coeffs.items()}

    alg = Algebra(left.field, _pair_basis(left, right), rule, unit=unit,
                  local_unit_for=local, name=f"{left.name}(x){right.name}",
                  fmt_id=_pair_fmt(left, right))
    alg.factors = (left, right)
    cache[key] = (alg, right)
    return alg


def tensor_elem(x: Element, y: Element, into=None) -> Element:
    """Elementary tensor x (x) y inside the cached tensor space/algebra."""
    if into is None:
        lsp, rsp = x.space, y.space
        into = (tensor_algebra(lsp, rsp)
                if isinstance(lsp, Algebra) and isinstance(rsp, Algebra)
                else tensor_space(lsp, rsp))
    f = into.field
    coeffs = {(u, v): f.mul(cu, cv)
              for u, cu in x.coeffs.items() for v, cv in y.coeffs.items()}
    return Element(into, {k: v for k, v in coeffs.items() if v})


def tensor_module(m: ModuleStructure, n: ModuleStructure) -> ModuleStructure:
    """Componentwise module over the tensor algebra (same side required)."""
    if m.side != n.side:
        raise InputError("tensor of modules with mismatched sides")
    carrier = tensor_space(m.space, n.space)
    acting = tensor_algebra(m.algebra, n.algebra)

    def rule(m_id, a_id):
        (mi, ni), (ai, bi) = m_id, a_id
        xa = m.act_basis(mi, ai)
        yb = n.act_basis(ni, bi)
        f = carrier.field
        return {(u, v): f.mul(cu, cv)
                for u, cu in xa.coeffs.items() for v, cv in yb.coeffs.items()}

    return ModuleStructure(carrier, acting, m.side, rule,
                           name=f"{m.name} (x) {n.name}")


def reassociate_right(elem: Element, target: Space) -> Element:
    """((i,j),k) -> (i,(j,k)) relabeling into the prebuilt target space."""
    out = {}
    for bid, v in elem.coeffs.items():
        (i, j), k = bid
        out[(i, (j, k))] = v
    return Element(target, out)


def reassociate_left(elem: Element, target: Space) -> Element:
    """(i,(j,k)) -> ((i,j),k) relabeling into the prebuilt target space."""
    out = {}
    for bid, v in elem.coeffs.items():
        i, (j, k) = bid
        out[((i, j), k)] = v
    return Element(target, out)
