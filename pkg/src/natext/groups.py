"""Receiving groups and S-groups.

An S-group is a group G together with a map eta from the generators of a
finitely presented semigroup S into G such that eta respects the relations
and the images generate G.  Elements are (family, payload) pairs; payloads
are canonical for every family except the generic one, so equality of
canonical payloads is equality of elements.

Conventions fixed here and used everywhere else:

* Group multiplication composes affine maps: (g*h)(x) = g(h(x)), and a
  signed word read left to right multiplies in that order.
* Affine payloads are (k, c) for x -> base^k * x + c with exact Fraction
  offsets; composition is (k, c) * (k', c') = (k + k', base^k * c' + c).
* BS(m, n) is the group <a, b | a b^m a^-1 = b^n> with stable letter a and
  elliptic generator b.  Britton payloads are the unique normal form
  b^{x0} a^{e1} b^{x1} ... a^{ek} b^{xk} with the exponent after a^{+1}
  coset-reduced mod m, the exponent after a^{-1} reduced mod n, and no
  pinch (a b^0 a^-1 or a^-1 b^0 a).
* Finite group tables multiply as table[i][j] = i * j with permutations
  composing (p*q)(x) = p(q(x)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import snf
from .errors import (
    EqualityUnknown,
    FamilyMismatch,
    NatextError,
    NotDeclaredCommutative,
)
from .words import (
    GeneratorSet,
    SemigroupPresentation,
    TriState,
    free_reduce,
    letter_counts,
    signed_counts,
    signed_invert,
    word_to_signed,
)


@dataclass(frozen=True)
class GroupElem:
    family: "GroupFamily"
    payload: object

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        return mul(self, other)

    def __str__(self) -> str:
        return self.family.payload_str(self.payload)


class GroupFamily:
    """Base class: a group given by payload-level operations."""

    name = "group"

    def _key(self):
        return (type(self).__name__,)

    def __eq__(self, other):
        return isinstance(other, GroupFamily) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    # payload-level interface
    def identity_payload(self):
        raise NotImplementedError

    def mul_payload(self, a, b):
        raise NotImplementedError

    def inv_payload(self, a):
        raise NotImplementedError

    def payload_str(self, a) -> str:
        return str(a)

    def to_signed_word(self, a):
        """A signed word over this family's own generators naming a, when
        the payload supports it."""
        raise NatextError(f"{self.name} payloads have no canonical word form")

    # element-level conveniences
    def identity(self) -> GroupElem:
        return GroupElem(self, self.identity_payload())

    def elem(self, payload) -> GroupElem:
        return GroupElem(self, payload)

    def tri_equal(self, a, b) -> TriState:
        """Payload equality; canonical families decide exactly."""
        return TriState.EQUAL if a == b else TriState.NOT_EQUAL


def mul(g: GroupElem, h: GroupElem) -> GroupElem:
    if g.family != h.family:
        raise FamilyMismatch(f"{g.family.name} * {h.family.name}")
    return GroupElem(g.family, g.family.mul_payload(g.payload, h.payload))


def inv(g: GroupElem) -> GroupElem:
    return GroupElem(g.family, g.family.inv_payload(g.payload))


def is_identity(g: GroupElem) -> bool:
    tri = g.family.tri_equal(g.payload, g.family.identity_payload())
    if tri is TriState.UNKNOWN:
        raise EqualityUnknown("identity test undecided at this budget")
    return tri is TriState.EQUAL


class ZdFamily(GroupFamily):
    """Z^d, payload = integer tuple."""

    def __init__(self, d: int):
        self.d = d
        self.name = f"Z^{d}"

    def _key(self):
        return ("Zd", self.d)

    def identity_payload(self):
        return (0,) * self.d

    def mul_payload(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv_payload(self, a):
        return tuple(-x for x in a)

    def to_signed_word(self, a):
        out = []
        for i, c in enumerate(a):
            sign = 1 if c > 0 else -1
            out.extend([(i, sign)] * abs(c))
        return tuple(out)


class FreeFamily(GroupFamily):
    """Free group F_n, payload = reduced signed word."""

    def __init__(self, n: int):
        self.n = n
        self.name = f"F_{n}"

    def _key(self):
        return ("Free", self.n)

    def identity_payload(self):
        return ()

    def mul_payload(self, a, b):
        return free_reduce(a + b)

    def inv_payload(self, a):
        return signed_invert(a)

    def to_signed_word(self, a):
        return a


class AffineFamily(GroupFamily):
    """Affine maps x -> base^k x + c under composition, payload (k, c).

    base = 2 gives the faithful model of BS(1,2); base = n the model of
    BS(1,n); base = 3/2 the rational-affine model used for BS(2,3)+
    injectivity checks.  Offsets stay exact Fractions whose denominators
    are powers of the base's denominator times powers of 2 for base 2.
    """

    def __init__(self, base: Fraction, label: str = ""):
        self.base = Fraction(base)
        if self.base <= 0 or self.base == 1:
            raise ValueError("slope base must be positive and != 1")
        self.name = label or f"affine(base={self.base})"

    def _key(self):
        return ("Affine", self.base)

    def identity_payload(self):
        return (0, Fraction(0))

    def mul_payload(self, a, b):
        k, c = a
        k2, c2 = b
        return (k + k2, self.base**k * c2 + c)

    def inv_payload(self, a):
        k, c = a
        return (-k, -(self.base ** (-k)) * c)

    def payload_str(self, a):
        k, c = a
        return f"x -> {self.base**k} x + {c}"


def _britton_canon(m: int, n: int, events) -> tuple:
    """Canonical Britton form from a stream of ('b', exp) / ('a', sign).

    Stack phase removes pinches a b^{mq} a^-1 -> b^{nq} and
    a^-1 b^{nq} a -> b^{mq} against full accumulated exponents; the carry
    phase then coset-reduces each exponent, pushing b-powers leftward via
    a b^{mq + r} = b^{nq} a b^r and a^-1 b^{nq + r} = b^{mq} a^-1 b^r.
    The result is the unique normal form (no new pinch can appear: a carry
    into x_i is a multiple of the modulus the stack phase already tested).
    """
    base = 0
    st: list = []  # [sign, exp]

    def add_b(e):
        nonlocal base
        if e == 0:
            return
        if st:
            st[-1][1] += e
        else:
            base += e

    def add_a(sign):
        if st and st[-1][0] == -sign:
            top_sign, exp = st[-1]
            d, mult = (m, n) if top_sign == 1 else (n, m)
            if exp % d == 0:
                st.pop()
                add_b(mult * (exp // d))
                return
        st.append([sign, 0])

    for kind, val in events:
        if kind == "b":
            add_b(val)
        else:
            add_a(val)

    for i in range(len(st) - 1, -1, -1):
        sign, x = st[i]
        d, mult = (m, n) if sign == 1 else (n, m)
        r = x % d
        q = (x - r) // d
        if q:
            st[i][1] = r
            if i > 0:
                st[i - 1][1] += mult * q
            else:
                base += mult * q
    for i in range(len(st) - 1):
        s1, x1 = st[i]
        s2 = st[i + 1][0]
        assert not (s1 == -s2 and x1 == 0), "pinch survived canonicalization"
    return base, tuple((s, x) for s, x in st)


def _britton_events(payload):
    x0, sylls = payload
    yield ("b", x0)
    for sign, x in sylls:
        yield ("a", sign)
        yield ("b", x)


class BrittonFamily(GroupFamily):
    """BS(m, n) in Britton normal form; payload (x0, ((sign, exp), ...))."""

    def __init__(self, m: int, n: int):
        if m < 1 or n < 1:
            raise ValueError("BS(m, n) needs m, n >= 1")
        self.m = m
        self.n = n
        self.name = f"BS({m},{n})-britton"

    def _key(self):
        return ("Britton", self.m, self.n)

    def identity_payload(self):
        return (0, ())

    def mul_payload(self, a, b):
        events = itertools.chain(_britton_events(a), _britton_events(b))
        return _britton_canon(self.m, self.n, events)

    def inv_payload(self, a):
        x0, sylls = a
        events = []
        for sign, x in reversed(sylls):
            events.append(("b", -x))
            events.append(("a", -sign))
        events.append(("b", -x0))
        return _britton_canon(self.m, self.n, events)

    def payload_str(self, a):
        x0, sylls = a
        parts = []
        if x0:
            parts.append(f"b^{x0}")
        for sign, x in sylls:
            parts.append("a" if sign == 1 else "a^-1")
            if x:
                parts.append(f"b^{x}")
        return " ".join(parts) if parts else "1"

    def to_signed_word(self, a):
        x0, sylls = a
        out = [(1, 1 if x0 > 0 else -1)] * abs(x0)
        for sign, x in sylls:
            out.append((0, sign))
            out.extend([(1, 1 if x > 0 else -1)] * abs(x))
        return tuple(out)

    def reduce_signed(self, sw) -> tuple:
        """Canonical payload of a signed word over (a, b) = (0, 1)."""
        events = []
        for gen, sign in sw:
            if gen == 0:
                events.append(("a", sign))
            elif gen == 1:
                events.append(("b", sign))
            else:
                raise ValueError("Britton words use generators 0 (a) and 1 (b)")
        return _britton_canon(self.m, self.n, events)


def britton_reduce(family: BrittonFamily, sw) -> GroupElem:
    """Britton/HNN normal form of a signed word over {a, b}."""
    return family.elem(family.reduce_signed(sw))


def perm_compose(p: tuple, q: tuple) -> tuple:
    """(p*q)(x) = p(q(x))."""
    return tuple(p[q[i]] for i in range(len(p)))


def transposition(n: int, i: int, j: int) -> tuple:
    out = list(range(n))
    out[i], out[j] = out[j], out[i]
    return tuple(out)


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group as a multiplication table over 0..order-1."""

    table: tuple
    names: tuple

    def __post_init__(self):
        k = len(self.table)
        if len(self.names) != k:
            raise ValueError("names/table size mismatch")
        for row in self.table:
            if len(row) != k or sorted(row) != list(range(k)):
                raise ValueError("table rows must be permutations")
        for j in range(k):
            col = [self.table[i][j] for i in range(k)]
            if sorted(col) != list(range(k)):
                raise ValueError("table columns must be permutations")
        if self.identity is None:
            raise ValueError("table has no identity element")
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("table is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self):
        for e in range(len(self.table)):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(len(self.table))):
                return e
        return None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        e = self.identity
        for b in range(self.order):
            if self.table[a][b] == e:
                return b
        raise ValueError("no inverse")

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        return FiniteGroup(table, tuple(str(i) for i in range(n)))

    @staticmethod
    def symmetric(n: int) -> "FiniteGroup":
        perms = sorted(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        table = tuple(
            tuple(index[perm_compose(p, q)] for q in perms) for p in perms
        )
        names = tuple("".join(map(str, p)) for p in perms)
        return FiniteGroup(table, names)

    @staticmethod
    def from_permutations(gens) -> tuple:
        """Closure of permutation generators; returns (group, index map).

        index maps a permutation tuple to its element index.
        """
        if not gens:
            raise ValueError("need at least one permutation")
        deg = len(gens[0])
        ident = tuple(range(deg))
        elems = [ident]
        seen = {ident: 0}
        queue = [ident]
        while queue:
            p = queue.pop(0)
            for g in gens:
                q = perm_compose(p, g)
                if q not in seen:
                    seen[q] = len(elems)
                    elems.append(q)
                    queue.append(q)
                q = perm_compose(g, p)
                if q not in seen:
                    seen[q] = len(elems)
                    elems.append(q)
                    queue.append(q)
        table = tuple(
            tuple(seen[perm_compose(p, q)] for q in elems) for p in elems
        )
        names = tuple("".join(map(str, p)) for p in elems)
        return FiniteGroup(table, names), seen


class FiniteFamily(GroupFamily):
    """Finite group family; payload = element index."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.name = f"finite(order={group.order})"

    def _key(self):
        return ("Finite", self.group.table)

    def identity_payload(self):
        return self.group.identity

    def mul_payload(self, a, b):
        return self.group.mul(a, b)

    def inv_payload(self, a):
        return self.group.inverse(a)

    def payload_str(self, a):
        return self.group.names[a]


class GenericFamily(GroupFamily):
    """Presented group with bounded-rewriting equality.

    payload = freely reduced signed word (a representative, not canonical).
    Equality is decided by reducing u v^-1, separating in the
    abelianization, and otherwise searching for a trivializing sequence of
    relator insertions within a length cap and node budget.  Unknown
    answers surface as EqualityUnknown where a hard verdict is required.
    """

    def __init__(self, relators: tuple, n_gens: int, budget: int = 3000, slack: int = 6):
        self.relators = tuple(free_reduce(r) for r in relators)
        self.n_gens = n_gens
        self.budget = budget
        self.slack = slack
        self.name = "generic"

    def _key(self):
        return ("Generic", self.relators, self.n_gens)

    def identity_payload(self):
        return ()

    def mul_payload(self, a, b):
        return free_reduce(a + b)

    def inv_payload(self, a):
        return signed_invert(a)

    def to_signed_word(self, a):
        return a

    def _lattice(self):
        return [signed_counts(r, self.n_gens) for r in self.relators]

    def tri_equal(self, a, b) -> TriState:
        w = free_reduce(a + signed_invert(b))
        if not w:
            return TriState.EQUAL
        if not self.relators:
            return TriState.NOT_EQUAL
        if not snf.lattice_contains(self._lattice(), signed_counts(w, self.n_gens)):
            return TriState.NOT_EQUAL
        # breadth-first search for a trivializing insertion sequence
        cap = len(w) + max(len(r) for r in self.relators) + self.slack
        inserts = []
        for r in self.relators:
            inserts.append(r)
            inserts.append(signed_invert(r))
        seen = {w}
        queue = [w]
        spent = 0
        while queue and spent < self.budget:
            cur = queue.pop(0)
            spent += 1
            for ins in inserts:
                for i in range(len(cur) + 1):
                    new = free_reduce(cur[:i] + ins + cur[i:])
                    if not new:
                        return TriState.EQUAL
                    if len(new) <= cap and new not in seen:
                        seen.add(new)
                        queue.append(new)
        return TriState.UNKNOWN


@dataclass(frozen=True)
class SGroup:
    """A receiving group G with the generator map eta from a presented
    semigroup S.  relators, when present, normally generate the kernel of
    the free group on the semigroup generators onto G (written as signed
    words over the semigroup generator indices)."""

    name: str
    family: GroupFamily
    presentation: SemigroupPresentation
    eta: tuple  # GroupElem per semigroup generator
    relators: tuple | None = None
    membership_kind: str | None = None

    @property
    def n_gens(self) -> int:
        return self.presentation.n_gens

    def identity(self) -> GroupElem:
        return self.family.identity()


def eta_apply(sg: SGroup, word) -> GroupElem:
    """Image of a positive word under eta (left-to-right product)."""
    acc = sg.identity()
    for gen in word:
        acc = mul(acc, sg.eta[gen])
    return acc


def eta_apply_signed(sg: SGroup, sw) -> GroupElem:
    acc = sg.identity()
    for gen, sign in sw:
        e = sg.eta[gen]
        acc = mul(acc, e if sign == 1 else inv(e))
    return acc


def semigroup_membership(sg: SGroup, g: GroupElem):
    """Exact test g in eta(S) where available.

    Returns (True, witness word), (False, None), or (None, None) when no
    exact test exists for the family.
    """
    if g.family != sg.family:
        raise FamilyMismatch("membership test on foreign element")
    kind = sg.membership_kind
    if kind == "zd":
        coords = g.payload
        if all(c >= 0 for c in coords):
            witness = tuple(
                gen for gen, c in enumerate(coords) for _ in range(c)
            )
            return True, witness
        return False, None
    if kind == "free":
        sw = g.payload
        if all(sign == 1 for _, sign in sw):
            return True, tuple(gen for gen, _ in sw)
        return False, None
    if kind == "bs12":
        k, c = g.payload
        if k == 0:
            return (True, ()) if c == 0 else (False, None)
        if k < 0 or c.denominator != 1 or not (0 <= c < 2**k):
            return False, None
        # positive length-k words biject with (k, c): c = sum eps_i 2^(i-1)
        bits = int(c)
        witness = tuple(1 if (bits >> (i - 1)) & 1 else 0 for i in range(1, k + 1))
        return True, witness
    return None, None


# ---------------------------------------------------------------------------
# constructors


def _commutator_pairs(p: SemigroupPresentation):
    """Generator pairs {i, j} covered by a commutation relation."""
    pairs = set()
    for lhs, rhs in p.relations:
        if len(lhs) == 2 and len(rhs) == 2 and lhs == rhs[::-1] and lhs[0] != lhs[1]:
            pairs.add(frozenset(lhs))
    return pairs


def _bs_shape(p: SemigroupPresentation):
    """Detect a single relation x y^m = y^n x; returns (x, y, m, n) or None."""
    if len(p.relations) != 1:
        return None
    for lhs, rhs in (p.relations[0], p.relations[0][::-1]):
        if len(lhs) < 2 or len(rhs) < 2:
            continue
        x = lhs[0]
        y = lhs[-1]
        if x == y:
            continue
        if all(g == y for g in lhs[1:]) and rhs[-1] == x and all(g == y for g in rhs[:-1]):
            m = len(lhs) - 1
            n = len(rhs) - 1
            return x, y, m, n
    return None


def _zd_relators(d: int) -> tuple:
    out = []
    for i in range(d):
        for j in range(i + 1, d):
            out.append(((i, 1), (j, 1), (i, -1), (j, -1)))
    return tuple(out)


def sgroup_zd(d: int, names=None) -> SGroup:
    gens = GeneratorSet(tuple(names) if names else tuple(f"x{i}" for i in range(d)) if d > 2 else ("x", "y")[:d])
    rels = tuple(((i, j), (j, i)) for i in range(d) for j in range(i + 1, d))
    pres = SemigroupPresentation(gens, rels)
    fam = ZdFamily(d)
    eta = tuple(fam.elem(tuple(1 if k == i else 0 for k in range(d))) for i in range(d))
    return SGroup(f"Z^{d}", fam, pres, eta, _zd_relators(d), "zd")


def sgroup_free(n: int, names=None) -> SGroup:
    gens = GeneratorSet(tuple(names) if names else ("a", "b", "c", "d")[:n] if n <= 4 else tuple(f"g{i}" for i in range(n)))
    pres = SemigroupPresentation(gens, ())
    fam = FreeFamily(n)
    eta = tuple(fam.elem(((i, 1),)) for i in range(n))
    return SGroup(f"F_{n}", fam, pres, eta, (), "free")


_BS12_RELATOR = ((1, -1), (0, 1), (1, 1), (0, -1), (1, -1), (0, 1))  # b^-1 a b a^-1 b^-1 a


def sgroup_bs12() -> SGroup:
    """BS(1,2) receiving the free semigroup on a, b via the dyadic model
    a: x -> 2x, b: x -> 2x + 1.  eta is injective with image the positive
    words (binary-digit bijection), and the single defining relator in
    these coordinates is b^-1 a b a^-1 b^-1 a."""
    gens = GeneratorSet(("a", "b"))
    pres = SemigroupPresentation(gens, ())
    fam = AffineFamily(Fraction(2), "BS(1,2)-dyadic")
    eta = (fam.elem((1, Fraction(0))), fam.elem((1, Fraction(1))))
    return SGroup("BS(1,2)", fam, pres, eta, (_BS12_RELATOR,), "bs12")


def sgroup_bs(m: int, n: int) -> SGroup:
    """BS(m, n)+ = <a, b | a b^m = b^n a>+ received in BS(m, n).

    m = 1 uses the faithful affine model (a: x -> n x, b: x -> x + 1);
    otherwise the Britton normal-form engine.
    """
    gens = GeneratorSet(("a", "b"))
    rel = ((0,) + (1,) * m, (1,) * n + (0,))
    pres = SemigroupPresentation(gens, (rel,))
    relator = (((0, 1),) + ((1, 1),) * m + ((0, -1),) + ((1, -1),) * n,)
    if m == 1:
        fam = AffineFamily(Fraction(n), f"BS(1,{n})-affine")
        eta = (fam.elem((1, Fraction(0))), fam.elem((0, Fraction(1))))
    else:
        fam = BrittonFamily(m, n)
        eta = (fam.elem((0, ((1, 0),))), fam.elem((1, ())))
    return SGroup(f"BS({m},{n})", fam, pres, eta, relator, None)


def bs23_affine_sgroup() -> SGroup:
    """The rational-affine model of BS(2,3)+: a: x -> (3/2) x, b: x -> x+1.

    Used for injectivity cross-checks on positive words; slopes are powers
    of 3/2 and offsets have power-of-two denominators.
    """
    gens = GeneratorSet(("a", "b"))
    rel = ((0, 1, 1), (1, 1, 1, 0))
    pres = SemigroupPresentation(gens, (rel,))
    fam = AffineFamily(Fraction(3, 2), "BS(2,3)-affine")
    eta = (fam.elem((1, Fraction(0))), fam.elem((0, Fraction(1))))
    relator = (((0, 1), (1, 1), (1, 1), (0, -1), (1, -1), (1, -1), (1, -1)),)
    return SGroup("BS(2,3)-affine", fam, pres, eta, relator, None)


def sgroup_finite(group: FiniteGroup, eta_indices, presentation=None, name=None) -> SGroup:
    fam = FiniteFamily(group)
    if presentation is None:
        gens = GeneratorSet(tuple(f"g{i}" for i in range(len(eta_indices))))
        presentation = SemigroupPresentation(gens, ())
    eta = tuple(fam.elem(i) for i in eta_indices)
    return SGroup(name or fam.name, fam, presentation, eta, None, None)


def free_s_group_of(p: SemigroupPresentation, budget: int | None = None) -> SGroup:
    """The free S-group on a presented semigroup: the group with the same
    presentation, received via letter-wise inclusion.

    Recognized shapes get exact engines: no relations -> free group;
    all-pairs commutation -> Z^d; a single x y^m = y^n x relation ->
    BS(m, n) (affine when m = 1, Britton otherwise).  Anything else runs
    on the generic bounded-rewriting engine, whose word-equality search
    the optional budget caps.
    """
    d = p.n_gens
    if not p.relations:
        fam = FreeFamily(d)
        eta = tuple(fam.elem(((i, 1),)) for i in range(d))
        return SGroup(f"F_{d}", fam, p, eta, (), "free")
    pairs = _commutator_pairs(p)
    all_pairs = {frozenset((i, j)) for i in range(d) for j in range(i + 1, d)}
    if d >= 2 and pairs == all_pairs and len(p.relations) == len(all_pairs):
        fam = ZdFamily(d)
        eta = tuple(fam.elem(tuple(1 if k == i else 0 for k in range(d))) for i in range(d))
        return SGroup(f"Z^{d}", fam, p, eta, _zd_relators(d), "zd")
    shape = _bs_shape(p)
    if shape is not None and d == 2:
        x, y, m, n = shape
        relator = (((x, 1),) + ((y, 1),) * m + ((x, -1),) + ((y, -1),) * n,)
        if m == 1:
            fam = AffineFamily(Fraction(n), f"BS(1,{n})-affine")
            images = {x: fam.elem((1, Fraction(0))), y: fam.elem((0, Fraction(1)))}
        else:
            fam = BrittonFamily(m, n)
            images = {x: fam.elem((0, ((1, 0),))), y: fam.elem((1, ()))}
        eta = tuple(images[i] for i in range(d))
        return SGroup(f"BS({m},{n})", fam, p, eta, relator, None)
    relators = tuple(
        free_reduce(word_to_signed(l) + signed_invert(word_to_signed(r)))
        for l, r in p.relations
    )
    if budget is None:
        fam = GenericFamily(relators, d)
    else:
        fam = GenericFamily(relators, d, budget=budget)
    eta = tuple(fam.elem(((i, 1),)) for i in range(d))
    return SGroup("generic", fam, p, eta, relators, None)


# ---------------------------------------------------------------------------
# Grothendieck group of a commutative presented semigroup


@dataclass(frozen=True)
class AbelianStructure:
    """Z^rank + sum of Z/d, with each generator's image coordinates given
    as (free part, torsion part)."""

    rank: int
    torsion: tuple
    gen_images: tuple


def grothendieck_group(p: SemigroupPresentation, declared_commutative: bool = False) -> AbelianStructure:
    """Group completion of a commutative presented semigroup.

    The presentation must either contain a commutation relation for every
    generator pair or be declared commutative by the caller (the
    cancellative-embedding hypothesis is assumed, not checked).  Computed
    as Z^gens modulo the lattice of relation count-differences via Smith
    normal form.
    """
    d = p.n_gens
    if d > 1 and not declared_commutative:
        pairs = _commutator_pairs(p)
        all_pairs = {frozenset((i, j)) for i in range(d) for j in range(i + 1, d)}
        if pairs != all_pairs:
            raise NotDeclaredCommutative(
                "presentation lacks commutation relations; pass declared_commutative=True"
            )
    rows = []
    for lhs, rhs in p.relations:
        lv = letter_counts(lhs, d)
        rv = letter_counts(rhs, d)
        rows.append([a - b for a, b in zip(lv, rv)])
    rows = [r for r in rows if any(r)]
    rank, torsion, v = snf.quotient_structure(rows, d)
    factors = snf.invariant_factors(rows) if rows else []
    images = []
    for i in range(d):
        coords = [v[i][j] for j in range(d)]
        free_part = tuple(coords[len(factors):])
        torsion_part = tuple(
            coords[j] % factors[j] for j in range(len(factors)) if factors[j] >= 2
        )
        images.append((free_part, torsion_part))
    return AbelianStructure(rank, tuple(torsion), tuple(images))


# ---------------------------------------------------------------------------
# homomorphic extension along words


def endomorphism_apply(theta, w, family: GroupFamily | None = None) -> GroupElem:
    """Extend a generator assignment homomorphically along w.

    theta is a sequence of GroupElems (one per source generator, all in one
    target family); w is a signed word, a positive word, or a GroupElem
    whose payload has a word form.
    """
    if family is None:
        if not theta:
            raise ValueError("need a target family for an empty assignment")
        family = theta[0].family
    for e in theta:
        if e.family != family:
            raise FamilyMismatch("assignment images live in different families")
    if isinstance(w, GroupElem):
        sw = w.family.to_signed_word(w.payload)
    elif w and not isinstance(w[0], tuple):
        sw = word_to_signed(tuple(w))
    else:
        sw = tuple(w)
    acc = family.identity()
    for gen, sign in sw:
        e = theta[gen]
        acc = mul(acc, e if sign == 1 else inv(e))
    return acc
