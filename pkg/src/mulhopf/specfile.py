"""Line-oriented text format for algebras and their coproduct data.

A file either declares a finite algebra by structure constants or names a
built-in oracle family.  Statements, one per line, `#` starts a comment:

    field Q                      | field Fp <p>
    basis <id> <id> ...          | oracle <name> [<int> ...]
    mul <i> <j> = <element>
    unit = <element>
    delta <i> (<j>,<k>) = <element of A(x)A>
    epsilon <i> = <scalar>
    antipode <i> = <element>
    coaction <i> (<j>,<k>) = <element of A(x)A>
    window <n>
    expansion <n>

Elements are written `<coeff>*<id> + <coeff>*<id> + ...` (or `0`); tensor
ids are `(<i>,<j>)`.  This matches how elements print, so tables written
by the tool parse back.  Products and coproduct slices default to zero on
pairs with no line, which keeps the rules total on the declared basis.

The `delta` line tabulates the framed coproduct from the left,
`Delta(e_i) (e_j (x) e_k)`; the matching right action is derived by
solving the two-sided multiplier compatibility, so a table that cannot
be completed to a multiplier is rejected.  `coaction` tabulates a framed
coaction of the algebra on itself the same way.
"""

from __future__ import annotations

import re

from .fields import GF, QQ, FieldError
from .linalg import GaussianSolver, SparseMatrix
from .algebra import Element, InputError, finite_algebra, tensor_algebra
from .multiplier import Multiplier, iota
from .extension import Extension
from .bialgebra import MultiplierBialgebra, counit_extension
from .hopf import MultiplierMap
from . import gallery


class SpecError(InputError):
    """Syntax or declaration error at a specific line of the input."""

    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


_ID = r"[A-Za-z_][A-Za-z0-9_]*"
_ID_RE = re.compile(rf"^{_ID}$")
_PAIR_RE = re.compile(rf"^\(\s*({_ID})\s*,\s*({_ID})\s*\)$")
_TERM_RE = re.compile(rf"^(?P<coeff>[^*\s]+)\s*\*\s*(?P<id>{_ID}|\(\s*{_ID}\s*,\s*{_ID}\s*\))$")


class SpecFile:
    """Parsed form of one input file; build_bundle turns it into objects."""

    def __init__(self):
        self.field = None
        self.field_text = None
        self.window = None
        self.expansion = None
        self.oracle = None          # (name, [int params]) or None
        self.ids = None             # declared order, finite case
        self.mul = {}               # (i, j) -> {k: scalar}
        self.unit = None            # {k: scalar} or None
        self.delta = {}             # i -> {(j, k): {(p, q): scalar}}
        self.epsilon = {}           # i -> scalar
        self.antipode = {}          # i -> {k: scalar}
        self.coaction = {}          # i -> {(j, k): {(p, q): scalar}}

    @property
    def finite(self):
        return self.ids is not None


def _scalar(field, text, line_no):
    try:
        return field.parse(text)
    except FieldError as exc:
        raise SpecError(line_no, str(exc)) from None


def _split_terms(text):
    # top-level split on +; minus signs live inside the coefficient token
    return [t.strip() for t in text.split("+")]


def _parse_id(token, declared, line_no):
    m = _PAIR_RE.match(token)
    if m:
        i, j = m.group(1), m.group(2)
        for part in (i, j):
            if part not in declared:
                raise SpecError(line_no, f"undeclared basis id {part!r}")
        return (i, j)
    if not _ID_RE.match(token):
        raise SpecError(line_no, f"malformed basis id {token!r}")
    if token not in declared:
        raise SpecError(line_no, f"undeclared basis id {token!r}")
    return token


def _parse_element(field, text, declared, line_no, pair=False):
    """``coeff*id + ...`` as a coefficient dict; '0' is the zero element."""
    text = text.strip()
    if text == "0":
        return {}
    out = {}
    for term in _split_terms(text):
        m = _TERM_RE.match(term)
        if not m:
            raise SpecError(line_no, f"malformed term {term!r} (want coeff*id)")
        bid = _parse_id(m.group("id"), declared, line_no)
        if pair != isinstance(bid, tuple):
            want = "tensor ids (i,j)" if pair else "plain ids"
            raise SpecError(line_no, f"this rule takes {want}, got {m.group('id')!r}")
        c = _scalar(field, m.group("coeff"), line_no)
        if c:
            prev = out.get(bid)
            out[bid] = field.add(prev, c) if prev is not None else c
            if not out[bid]:
                del out[bid]
    return out


def parse_spec(text: str) -> SpecFile:
    spec = SpecFile()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()

        if head == "field":
            if spec.field is not None:
                raise SpecError(line_no, "duplicate field declaration")
            toks = rest.split()
            if toks == ["Q"]:
                spec.field = QQ
            elif len(toks) == 2 and toks[0] == "Fp":
                try:
                    spec.field = GF(int(toks[1]))
                except ValueError:
                    raise SpecError(line_no, f"bad modulus {toks[1]!r}") from None
                except FieldError as exc:
                    raise SpecError(line_no, str(exc)) from None
            else:
                raise SpecError(line_no, "expected `field Q` or `field Fp <p>`")
            spec.field_text = rest
            continue

        if spec.field is None:
            raise SpecError(line_no, "field declaration must come first")

        if head == "basis":
            if spec.ids is not None:
                raise SpecError(line_no, "duplicate basis declaration")
            if spec.oracle is not None:
                raise SpecError(line_no, "oracle specs take no basis line")
            toks = rest.split()
            if not toks:
                raise SpecError(line_no, "empty basis declaration")
            for t in toks:
                if not _ID_RE.match(t):
                    raise SpecError(line_no, f"malformed basis id {t!r}")
            if len(set(toks)) != len(toks):
                raise SpecError(line_no, "repeated basis id")
            spec.ids = toks
            continue

        if head == "oracle":
            if spec.oracle is not None:
                raise SpecError(line_no, "duplicate oracle declaration")
            if spec.ids is not None or spec.mul or spec.delta:
                raise SpecError(line_no, "oracle specs take no structure lines")
            toks = rest.split()
            if not toks:
                raise SpecError(line_no, "oracle needs a family name")
            try:
                params = [int(t) for t in toks[1:]]
            except ValueError:
                raise SpecError(line_no, "oracle parameters must be integers") from None
            spec.oracle = (toks[0], params)
            continue

        if head in ("window", "expansion"):
            try:
                n = int(rest)
            except ValueError:
                raise SpecError(line_no, f"{head} takes an integer") from None
            if n < 1:
                raise SpecError(line_no, f"{head} must be positive")
            setattr(spec, head, n)
            continue

        # everything below is a structure rule on a declared finite basis
        if spec.oracle is not None:
            raise SpecError(line_no, "oracle specs take no structure lines")
        if spec.ids is None:
            raise SpecError(line_no, "basis declaration must precede rules")
        declared = spec.ids

        if head == "mul":
            lhs, eq, rhs = line.partition("=")
            toks = lhs.split()[1:]
            if not eq or len(toks) != 2:
                raise SpecError(line_no, "expected `mul <i> <j> = <element>`")
            i = _parse_id(toks[0], declared, line_no)
            j = _parse_id(toks[1], declared, line_no)
            if (i, j) in spec.mul:
                raise SpecError(line_no, f"duplicate product rule for {i} {j}")
            spec.mul[(i, j)] = _parse_element(spec.field, rhs, declared, line_no)
            continue

        if head == "unit":
            lhs, eq, rhs = line.partition("=")
            if not eq or lhs.split() != ["unit"]:
                raise SpecError(line_no, "expected `unit = <element>`")
            if spec.unit is not None:
                raise SpecError(line_no, "duplicate unit declaration")
            spec.unit = _parse_element(spec.field, rhs, declared, line_no)
            continue

        if head in ("delta", "coaction"):
            lhs, eq, rhs = line.partition("=")
            toks = lhs.split()[1:]
            if not eq or len(toks) < 2:
                raise SpecError(line_no, f"expected `{head} <i> (<j>,<k>) = <element>`")
            i = _parse_id(toks[0], declared, line_no)
            frame = _parse_id("".join(toks[1:]), declared, line_no)
            if not isinstance(frame, tuple):
                raise SpecError(line_no, f"{head} frame must be a tensor id (j,k)")
            table = getattr(spec, head).setdefault(i, {})
            if frame in table:
                raise SpecError(line_no, f"duplicate {head} rule for {i} at {frame}")
            table[frame] = _parse_element(spec.field, rhs, declared, line_no, pair=True)
            continue

        if head == "epsilon":
            lhs, eq, rhs = line.partition("=")
            toks = lhs.split()[1:]
            if not eq or len(toks) != 1:
                raise SpecError(line_no, "expected `epsilon <i> = <scalar>`")
            i = _parse_id(toks[0], declared, line_no)
            if i in spec.epsilon:
                raise SpecError(line_no, f"duplicate epsilon rule for {i}")
            spec.epsilon[i] = _scalar(spec.field, rhs.strip(), line_no)
            continue

        if head == "antipode":
            lhs, eq, rhs = line.partition("=")
            toks = lhs.split()[1:]
            if not eq or len(toks) != 1:
                raise SpecError(line_no, "expected `antipode <i> = <element>`")
            i = _parse_id(toks[0], declared, line_no)
            if i in spec.antipode:
                raise SpecError(line_no, f"duplicate antipode rule for {i}")
            spec.antipode[i] = _parse_element(spec.field, rhs, declared, line_no)
            continue

        raise SpecError(line_no, f"unknown statement {head!r}")

    if spec.field is None:
        raise SpecError(1, "missing field declaration")
    if spec.ids is None and spec.oracle is None:
        raise SpecError(1, "missing basis or oracle declaration")
    if spec.coaction and not spec.delta:
        raise SpecError(1, "coaction rules need delta rules for the same algebra")
    return spec


# ---------------------------------------------------------------------------
# building objects from a parsed spec


def derive_rho(T, lam_table, what="delta"):
    """Complete a left slice table to a multiplier's right action.

    ``lam_table`` maps basis ids of T to the element `m (e_bid)`; the
    right action is the unique solution of `x m(y) = (x m) y`.  Raises
    when the algebra has right annihilators (no unique completion) or
    the table is incompatible with being a multiplier.
    """
    ids = list(T.basis.ids)
    solver = getattr(T, "_rho_solver", None)
    if solver is None:
        cols = []
        for t in ids:
            col = {}
            for y in ids:
                for r, v in T.mul_basis(t, y).coeffs.items():
                    col[(y, r)] = v
            cols.append((t, col))
        solver = T._rho_solver = GaussianSolver(SparseMatrix.from_columns(T.field, cols))
    if solver.free_cols:
        raise InputError(
            f"{what} table cannot be completed: the algebra has right annihilators")
    rho = {}
    for p in ids:
        rhs = {}
        for y in ids:
            prod = T.basis_element(p) * Element(T, lam_table.get(y, {}))
            for r, v in prod.coeffs.items():
                rhs[(y, r)] = v
        sol = solver.solve(rhs)
        if sol is None:
            raise InputError(
                f"{what} table is not a two-sided multiplier (fails at {T.fmt_id(p)})")
        rho[p] = {t: c for t, c in sol.items() if c}
    return rho


def _slice_extension(A, T, tables, name):
    """Extension A -> M(T) from per-generator left slice tables."""
    mults = {}
    for i in A.basis.ids:
        lam_table = {frame: dict(coeffs)
                     for frame, coeffs in tables.get(i, {}).items()}
        rho_table = derive_rho(T, lam_table, what=f"{name} {A.fmt_id(i)}")
        mults[i] = Multiplier(
            T,
            lambda bid, _t=lam_table: Element(T, _t.get(bid, {})),
            lambda bid, _t=rho_table: Element(T, _t.get(bid, {})),
            name=f"{name}({A.fmt_id(i)})")
    return Extension(A, T, lambda i: mults[i], name=name)


def _oracle_entry(spec: SpecFile) -> gallery.GalleryEntry:
    name, params = spec.oracle
    field = spec.field
    window = spec.window
    if name == "kfun_cyclic":
        if len(params) != 1:
            raise InputError("kfun_cyclic takes exactly one parameter n")
        return gallery.kfun_cyclic(params[0], field=field)
    if params:
        raise InputError(f"oracle family {name!r} takes no parameters")
    if name == "kfin_Z":
        return gallery.kfin_Z(field, window=window or 4)
    if name == "kfin_N":
        return gallery.kfin_N(field, window=window or 4)
    if name == "matfin":
        return gallery.matfin(field, window=window or 3)
    if name == "rowalg2":
        return gallery.rowalg2(field)
    if name == "zero1":
        return gallery.zero1(field)
    raise InputError(f"unknown oracle family {name!r}")


def build_bundle(spec: SpecFile, name="specfile") -> gallery.GalleryEntry:
    """Algebra (and bialgebra pieces, if declared) from a parsed spec."""
    if spec.oracle is not None:
        entry = _oracle_entry(spec)
        if spec.window is not None:
            entry.default_window = spec.window
        if spec.expansion is not None and entry.bialgebra is not None:
            entry.bialgebra.expansion = spec.expansion
        return entry

    field = spec.field
    A = finite_algebra(field, spec.ids, spec.mul, unit=spec.unit, name=name)
    bialgebra = None
    if spec.delta:
        T = tensor_algebra(A, A)
        delta = _slice_extension(A, T, spec.delta, "Delta")
        epsilon = counit_extension(A, dict(spec.epsilon)) if spec.epsilon else None
        witness = None
        if spec.epsilon:
            for i in spec.ids:
                c = spec.epsilon.get(i)
                if c:
                    witness = A.basis_element(i).scale(field.inv(c))
                    break
        smap = None
        if spec.antipode:
            tables = {i: Element(A, spec.antipode.get(i, {})) for i in spec.ids}
            smap = MultiplierMap(A, lambda t: iota(A, tables[t]), name="S")
        bialgebra = MultiplierBialgebra(
            A, delta, epsilon, witness, window=spec.window,
            expansion=spec.expansion or 2, name=name, antipode=smap)
    entry = gallery.GalleryEntry(name, A, bialgebra,
                                 notes="from spec file",
                                 default_window=spec.window)
    if spec.coaction:
        T = tensor_algebra(A, A)
        entry.params["coaction"] = _slice_extension(A, T, spec.coaction, "rho")
    return entry


def load(path: str) -> gallery.GalleryEntry:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return build_bundle(parse_spec(text), name=path)
