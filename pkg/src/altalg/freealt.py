"""Decision procedure for multilinear identities of alternative algebras.

The degree-d multilinear slice of the free nonassociative algebra on an
ordered variable tuple has dimension d! * Catalan(d-1): a monomial is a
bracketing shape plus a permutation of the variables.  An element vanishes
in every alternative algebra iff each of its multihomogeneous components,
after polarization, lies in the span of the multilinear consequences of
the two linearized alternative laws

    A1(u,v,w) = (u,v,w) + (v,u,w),    A2(u,v,w) = (u,v,w) + (u,w,v).

That span is generated by C[A(u,v,w)] where u, v, w run over multilinear
monomials on the three blocks of an ordered partition of a subset of the
variables and C over one-hole multilinear contexts on the rest.  We build
it by streaming exact Gaussian elimination over the rationals and decide
membership by reducing the candidate vector against the echelon rows.
Everything is exact; there are no floats anywhere.
"""

from __future__ import annotations

import hashlib
import heapq
import math
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, List, Optional, Tuple

from .scalars import ONE, ZERO, rat, rat_str
from .terms import DegreeError, Expr, GenSym, Monomial, multilinearize

# A sparse vector is a tuple of (column index, nonzero scalar) pairs with
# strictly increasing indices.
SparseVec = Tuple[Tuple[int, object], ...]

CACHE_VERSION = 1
# Identifies the generator enumeration scheme; part of the cache header so a
# stale file from a different enumeration can never be trusted.
ENUM_SCHEME = "subset-partition-context/A1A2"

ENV_CACHE_DIR = "ALTALG_CACHE_DIR"


class ResourceCapError(RuntimeError):
    """Raised when an elimination exceeds its entry budget."""

    def __init__(self, message: str, entries: int, budget: int):
        super().__init__(message)
        self.entries = entries
        self.budget = budget


class DegreeCapError(RuntimeError):
    """Raised when a check would need a polarized degree above the cap."""

    def __init__(self, required: int, cap: int):
        super().__init__(
            f"polarized degree {required} exceeds the degree cap {cap}"
        )
        self.required = required
        self.cap = cap


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def ambient_dim(d: int) -> int:
    """d! * Catalan(d-1), the multilinear dimension at degree d."""
    return math.factorial(d) * catalan(d - 1)


# ---------------------------------------------------------------------------
# shapes and permutation ranking


@lru_cache(maxsize=None)
def _shapes(d: int) -> tuple:
    """All bracketing shapes on d leaves, in the canonical recursive order.

    A shape is None for a leaf or a pair (left, right)."""
    if d == 1:
        return (None,)
    out = []
    for i in range(1, d):
        for left in _shapes(i):
            for right in _shapes(d - i):
                out.append((left, right))
    return tuple(out)


def _perm_rank(perm) -> int:
    # factorial number system; perm is a permutation of range(d)
    d = len(perm)
    rank = 0
    for i in range(d):
        smaller = 0
        pi = perm[i]
        for j in range(i + 1, d):
            if perm[j] < pi:
                smaller += 1
        rank = rank * (d - i) + smaller
    return rank


def _perm_unrank(rank: int, d: int) -> tuple:
    digits = []
    for i in range(1, d + 1):
        digits.append(rank % i)
        rank //= i
    digits.reverse()
    avail = list(range(d))
    return tuple(avail.pop(dig) for dig in digits)


def _build_monomial(shape, leaves: Iterator[GenSym]) -> Monomial:
    if shape is None:
        return Monomial(next(leaves))
    left = _build_monomial(shape[0], leaves)
    right = _build_monomial(shape[1], leaves)
    return Monomial((left, right))


def _dissect(m: Monomial):
    """Return (shape, leaf list) of a monomial."""
    if isinstance(m.node, GenSym):
        return None, [m.node]
    ls, ll = _dissect(m.node[0])
    rs, rl = _dissect(m.node[1])
    ll.extend(rl)
    return (ls, rs), ll


class MultilinearBasis:
    """Index scheme for degree-d multilinear monomials on ordered variables.

    index = shape_rank * d! + permutation_rank, so all permutations of one
    shape occupy a contiguous block."""

    def __init__(self, vars_: Iterable[GenSym]):
        self.vars = tuple(vars_)
        d = len(self.vars)
        if d < 1:
            raise ValueError("need at least one variable")
        if len({v.name for v in self.vars}) != d:
            raise ValueError("variable names must be distinct")
        self.degree = d
        self.shapes = _shapes(d)
        self._shape_rank = {s: i for i, s in enumerate(self.shapes)}
        self._fact = math.factorial(d)
        self.size = len(self.shapes) * self._fact
        self._pos = {v: i for i, v in enumerate(self.vars)}

    def monomial(self, index: int) -> Monomial:
        if not 0 <= index < self.size:
            raise IndexError(index)
        shape_rank, perm_rank = divmod(index, self._fact)
        perm = _perm_unrank(perm_rank, self.degree)
        leaves = iter(self.vars[p] for p in perm)
        return _build_monomial(self.shapes[shape_rank], leaves)

    def index(self, m: Monomial) -> int:
        shape, leaves = _dissect(m)
        if len(leaves) != self.degree:
            raise DegreeError(
                f"monomial degree {len(leaves)} != basis degree {self.degree}"
            )
        try:
            perm = tuple(self._pos[s] for s in leaves)
        except KeyError as exc:
            raise DegreeError(f"monomial uses a symbol outside the basis: {exc}")
        if len(set(perm)) != self.degree:
            raise DegreeError("monomial is not multilinear in the basis variables")
        return self._shape_rank[shape] * self._fact + _perm_rank(perm)


@lru_cache(maxsize=None)
def _canonical_vars(d: int) -> tuple:
    # internal even symbols for the cached consequence spaces
    return tuple(GenSym(f"c{i}", 0) for i in range(1, d + 1))


def multilinear_basis(d: int, vars_: Optional[Iterable[GenSym]] = None) -> MultilinearBasis:
    if vars_ is None:
        vars_ = _canonical_vars(d)
    b = MultilinearBasis(vars_)
    if b.degree != d:
        raise ValueError(f"{b.degree} variables given for degree {d}")
    return b


def to_vector(e: Expr, basis: MultilinearBasis) -> SparseVec:
    """Coordinates of a multilinear Expr in the given basis."""
    items = sorted((basis.index(m), c) for m, c in e.coeffs.items())
    return tuple(items)


def from_vector(vec: SparseVec, basis: MultilinearBasis) -> Expr:
    return Expr({basis.monomial(i): c for i, c in vec})


# ---------------------------------------------------------------------------
# consequence generators

_HOLE = GenSym("~hole", 0)  # name is unparseable on purpose


def _replace_hole(m: Monomial, sub: Monomial) -> Monomial:
    if isinstance(m.node, GenSym):
        return sub if m.node is _HOLE else m
    left, right = m.node
    return Monomial((_replace_hole(left, sub), _replace_hole(right, sub)))


def _all_monomials(vars_: tuple) -> list:
    """Every multilinear monomial on the given symbols, canonical order."""
    k = len(vars_)
    out = []
    for shape in _shapes(k):
        for perm in permutations(range(k)):
            leaves = iter(vars_[p] for p in perm)
            out.append(_build_monomial(shape, leaves))
    return out


def _ordered_partitions_3(items: tuple):
    """Ordered partitions of items into three nonempty blocks."""
    k = len(items)
    for assign in product(range(3), repeat=k):
        blocks: List[List] = [[], [], []]
        for item, b in zip(items, assign):
            blocks[b].append(item)
        if blocks[0] and blocks[1] and blocks[2]:
            yield tuple(blocks[0]), tuple(blocks[1]), tuple(blocks[2])


def _mono(l: Monomial, r: Monomial) -> Monomial:
    return Monomial((l, r))


def _raw_generators(basis: MultilinearBasis):
    """Stream every consequence instance as a 4-tuple of (sign, Monomial).

    Deterministic order: subset size ascending, subset in combination order,
    ordered partition, u, v, w monomials in canonical order, context
    monomial, then law A1 before A2."""
    d = basis.degree
    vars_t = basis.vars
    if d < 3:
        return
    for k in range(3, d + 1):
        for support in combinations(range(d), k):
            rest = tuple(i for i in range(d) if i not in support)
            ctx_vars = tuple(vars_t[i] for i in rest) + (_HOLE,)
            contexts = _all_monomials(ctx_vars)
            for bu, bv, bw in _ordered_partitions_3(
                tuple(vars_t[i] for i in support)
            ):
                for u in _all_monomials(bu):
                    for v in _all_monomials(bv):
                        for w in _all_monomials(bw):
                            # (u,v,w) + (v,u,w) and (u,v,w) + (u,w,v),
                            # each associator expanded into two monomials
                            laws = (
                                (
                                    (1, _mono(_mono(u, v), w)),
                                    (-1, _mono(u, _mono(v, w))),
                                    (1, _mono(_mono(v, u), w)),
                                    (-1, _mono(v, _mono(u, w))),
                                ),
                                (
                                    (1, _mono(_mono(u, v), w)),
                                    (-1, _mono(u, _mono(v, w))),
                                    (1, _mono(_mono(u, w), v)),
                                    (-1, _mono(u, _mono(w, v))),
                                ),
                            )
                            for ctx in contexts:
                                for law in laws:
                                    yield tuple(
                                        (sgn, _replace_hole(ctx, t))
                                        for sgn, t in law
                                    )


def _index_terms(terms, basis: MultilinearBasis, canon=None) -> SparseVec:
    acc: dict = {}
    for sgn, mono in terms:
        if canon is not None:
            mono = canon(mono)
        idx = basis.index(mono)
        c = acc.get(idx, 0) + sgn
        if c:
            acc[idx] = c
        else:
            del acc[idx]
    return tuple((i, rat(c)) for i, c in sorted(acc.items()))


def consequence_generators(
    d: int, vars_: Optional[Iterable[GenSym]] = None
) -> Iterator[SparseVec]:
    """Stream the consequence vectors of the alternative laws at degree d.

    Signs are merged per column, so a generator can have fewer than four
    entries but never more."""
    basis = multilinear_basis(d, vars_)
    for terms in _raw_generators(basis):
        vec = _index_terms(terms, basis)
        if vec:
            yield vec


# ---------------------------------------------------------------------------
# symmetry projection
#
# A polarized component is invariant under permuting the fresh copies of
# each repeated variable.  The consequence span is stable under every
# variable permutation (the generating family maps to itself), so for a
# copy-symmetric query q and copy group G:
#
#     q in span(generators)  iff  q in span{ sum_{s in G} s(g) : g generator }
#
# and the right-hand span lives in the much smaller orbit coordinate space.
# The orbit of a monomial is represented by relabeling the copies of each
# group in order of first appearance in the leaf sequence; G acts freely on
# multilinear monomials, so each orbit has exactly |G| members and summing a
# generator over G is the same as accumulating its raw entries at their
# representatives.


def _groups_by_sym(vars_t: tuple, pattern: tuple) -> dict:
    """Map each copy symbol to (group id, group member tuple); blocks of the
    variable tuple of sizes pattern[i], only groups of size >= 2 recorded."""
    out = {}
    pos = 0
    for gid, k in enumerate(pattern):
        block = vars_t[pos : pos + k]
        pos += k
        if k >= 2:
            for s in block:
                out[s] = (gid, block)
    if pos != len(vars_t):
        raise ValueError("pattern does not partition the variables")
    return out


def _canonize(m: Monomial, groups: dict) -> Monomial:
    seen: dict = {}
    mapping: dict = {}
    trivial = True
    for leaf in m.leaves():
        grp = groups.get(leaf)
        if grp is None:
            continue
        gid, block = grp
        c = seen.get(gid, 0)
        seen[gid] = c + 1
        target = block[c]
        mapping[leaf] = target
        if target != leaf:
            trivial = False
    if trivial:
        return m

    def walk(node: Monomial) -> Monomial:
        if isinstance(node.node, GenSym):
            s = mapping.get(node.node, node.node)
            return node if s == node.node else Monomial(s)
        left, right = node.node
        nl, nr = walk(left), walk(right)
        if nl is left and nr is right:
            return node
        return Monomial((nl, nr))

    return walk(m)


@lru_cache(maxsize=None)
def _pattern_vars(pattern: tuple) -> tuple:
    # canonical even symbols, copy groups first: g1#1 g1#2 ... then singles
    out = []
    for gid, k in enumerate(pattern, start=1):
        if k >= 2:
            out.extend(GenSym(f"g{gid}#{j}", 0) for j in range(1, k + 1))
        else:
            out.append(GenSym(f"g{gid}", 0))
    return tuple(out)


def projected_generators(pattern: tuple) -> Iterator[SparseVec]:
    """Consequence generators summed over the copy groups of pattern,
    in orbit-representative coordinates of the full index space."""
    vars_t = _pattern_vars(pattern)
    basis = MultilinearBasis(vars_t)
    groups = _groups_by_sym(vars_t, pattern)
    canon = None if not groups else (lambda m: _canonize(m, groups))
    for terms in _raw_generators(basis):
        vec = _index_terms(terms, basis, canon)
        if vec:
            yield vec


# ---------------------------------------------------------------------------
# streaming exact elimination


class RowEchelonBasis:
    """Echelon rows keyed by pivot column.

    Pivot policy: streaming insertion; each incoming vector is reduced
    against existing rows in increasing column order and its least
    unmatched column becomes the pivot.  Rows are normalized to leading
    coefficient 1 but are not back-substituted against later rows; a
    membership query is reduced transitively, which gives the same answer
    and keeps the rows sparse."""

    __slots__ = ("degree", "size", "rows", "entries")

    def __init__(self, degree: int, size: int):
        self.degree = degree
        self.size = size
        self.rows: dict = {}  # pivot -> SparseVec with row[0] == (pivot, 1)
        self.entries = 0  # total stored pairs, for the resource budget

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _cascade(self, work: dict, stop_at_unmatched: bool):
        """Destructively reduce work (a column->scalar dict).

        Columns are consumed in increasing order, so a row subtraction can
        only touch columns after the current one.  Returns the first
        unmatched column when stop_at_unmatched, else the full residue."""
        rows = self.rows
        heap = list(work)
        heapq.heapify(heap)
        push = heapq.heappush
        pop = heapq.heappop
        residue = []
        while heap:
            i = pop(heap)
            c = work.pop(i, None)
            if c is None or not c:
                continue
            row = rows.get(i)
            if row is None:
                if stop_at_unmatched:
                    work[i] = c
                    return i
                residue.append((i, c))
                continue
            for j, rc in row[1:]:
                old = work.get(j)
                if old is None:
                    work[j] = -c * rc
                    push(heap, j)
                else:
                    nv = old - c * rc
                    if nv:
                        work[j] = nv
                    else:
                        del work[j]
        return None if stop_at_unmatched else tuple(residue)

    def insert(self, vec: SparseVec) -> bool:
        """Reduce vec and adjoin its residue as a new row; True if rank grew."""
        if not vec:
            return False
        work = dict(vec)
        lead = self._cascade(work, stop_at_unmatched=True)
        if lead is None:
            return False
        inv = ONE / work.pop(lead)
        row = [(lead, ONE)]
        row.extend((j, c * inv) for j, c in sorted(work.items()))
        self.rows[lead] = tuple(row)
        self.entries += len(row)
        return True

    def reduce_vec(self, vec: SparseVec) -> SparseVec:
        """Full residue of vec modulo the row space."""
        if not vec:
            return ()
        work = dict(vec)
        return self._cascade(work, stop_at_unmatched=False)

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce_vec(vec)


def reduce_basis(
    vectors: Iterable[SparseVec],
    degree: int,
    size: Optional[int] = None,
    max_entries: Optional[int] = None,
) -> RowEchelonBasis:
    """Eliminate a vector stream into a RowEchelonBasis.

    The resulting rank (and all membership answers) do not depend on the
    stream order; the stored rows do."""
    if size is None:
        size = ambient_dim(degree)
    basis = RowEchelonBasis(degree, size)
    for vec in vectors:
        basis.insert(vec)
        if max_entries is not None and basis.entries > max_entries:
            raise ResourceCapError(
                f"elimination exceeded {max_entries} stored entries at degree {degree}",
                basis.entries,
                max_entries,
            )
    return basis


# ---------------------------------------------------------------------------
# cached consequence spaces

_MEM_CACHE: dict = {}


def _pattern_tag(pattern: tuple) -> str:
    return "".join(str(k) for k in pattern)


def _params_hash(d: int, pattern: tuple) -> str:
    text = (
        f"{CACHE_VERSION}|{ENUM_SCHEME}|degree={d}"
        f"|ambient={ambient_dim(d)}|pattern={_pattern_tag(pattern)}"
    )
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _cache_path(d: int, pattern: tuple, cache_dir: str) -> str:
    return os.path.join(
        cache_dir,
        f"consequences-v{CACHE_VERSION}-d{d}-p{_pattern_tag(pattern)}.txt",
    )


def _save_echelon(basis: RowEchelonBasis, d: int, pattern: tuple, path: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(f"altalg-consequences {CACHE_VERSION}\n")
            fh.write(f"degree {d}\n")
            fh.write(f"pattern {_pattern_tag(pattern)}\n")
            fh.write(f"params {_params_hash(d, pattern)}\n")
            fh.write(f"rank {basis.rank}\n")
            for pivot in sorted(basis.rows):
                row = basis.rows[pivot]
                fh.write(
                    " ".join(f"{i}:{rat_str(c)}" for i, c in row) + "\n"
                )
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_echelon(d: int, pattern: tuple, path: str) -> Optional[RowEchelonBasis]:
    try:
        with open(path) as fh:
            header = [fh.readline().strip() for _ in range(5)]
            if header[0] != f"altalg-consequences {CACHE_VERSION}":
                return None
            if header[1] != f"degree {d}":
                return None
            if header[2] != f"pattern {_pattern_tag(pattern)}":
                return None
            if header[3] != f"params {_params_hash(d, pattern)}":
                return None
            rank = int(header[4].split()[1])
            basis = RowEchelonBasis(d, ambient_dim(d))
            for _ in range(rank):
                line = fh.readline()
                if not line.strip():
                    return None  # truncated
                row = []
                for tok in line.split():
                    i, _, c = tok.partition(":")
                    row.append((int(i), rat(c)))
                basis.rows[row[0][0]] = tuple(row)
                basis.entries += len(row)
            if basis.rank != rank:
                return None
    except (OSError, ValueError, IndexError):
        return None
    return basis


def _space(
    d: int,
    pattern: tuple,
    cache_dir: Optional[str] = None,
    max_entries: Optional[int] = None,
) -> RowEchelonBasis:
    key = (d, pattern)
    got = _MEM_CACHE.get(key)
    if got is not None:
        return got
    if cache_dir is None:
        cache_dir = os.environ.get(ENV_CACHE_DIR) or None
    path = _cache_path(d, pattern, cache_dir) if cache_dir else None
    if path and os.path.exists(path):
        loaded = _load_echelon(d, pattern, path)
        if loaded is not None:
            _MEM_CACHE[key] = loaded
            return loaded
    if any(k >= 2 for k in pattern):
        stream = projected_generators(pattern)
    else:
        stream = consequence_generators(d)
    basis = reduce_basis(stream, d, max_entries=max_entries)
    _MEM_CACHE[key] = basis
    if path:
        _save_echelon(basis, d, pattern, path)
    return basis


def consequence_space(
    d: int,
    cache_dir: Optional[str] = None,
    max_entries: Optional[int] = None,
) -> RowEchelonBasis:
    """The fully multilinear consequence span at degree d, memoized per
    process and optionally persisted to cache_dir (or $ALTALG_CACHE_DIR)."""
    return _space(d, (1,) * d, cache_dir, max_entries)


def symmetric_space(
    d: int,
    pattern: tuple,
    cache_dir: Optional[str] = None,
    max_entries: Optional[int] = None,
) -> RowEchelonBasis:
    """The consequence span projected onto copy-symmetric coordinates for a
    degree pattern such as (3,1,1,1); see the symmetry projection notes."""
    if sum(pattern) != d:
        raise ValueError("pattern must sum to the degree")
    return _space(d, tuple(pattern), cache_dir, max_entries)


def alt_dim(
    d: int,
    cache_dir: Optional[str] = None,
    max_entries: Optional[int] = None,
) -> int:
    """Dimension of the degree-d multilinear slice of the free alternative
    algebra: ambient minus consequence rank."""
    if d in (1, 2):
        return ambient_dim(d)
    return ambient_dim(d) - consequence_space(d, cache_dir, max_entries).rank


# ---------------------------------------------------------------------------
# identity decision


@dataclass
class IdentityVerdict:
    identity: bool
    degree: int  # highest polarized degree that was actually checked
    witness: Optional[Expr]  # nonzero residue of the first failing component

    def __bool__(self) -> bool:
        return self.identity


def _components(e: Expr) -> list:
    """Split into multihomogeneous components, deterministically ordered."""
    comps: dict = {}
    for m, c in e.coeffs.items():
        key = tuple(sorted(m.multidegree().items()))
        comps.setdefault(key, {})[m] = c
    return [Expr(comps[k]) for k in sorted(comps)]


def _polarize(e: Expr) -> Tuple[Expr, tuple, tuple]:
    """Fully multilinearize a multihomogeneous Expr.

    Each variable of degree k >= 2 is replaced by k fresh copies name#1..
    name#k (the '#' keeps them out of the parser's namespace).  No division
    by k! is performed; scaling does not affect T-ideal membership.  The
    final variables are ordered with the larger copy groups first and the
    returned pattern lists the group sizes in that order."""
    some = next(iter(e.coeffs))
    multideg = some.multidegree()
    syms = {s.name: s for m in e.coeffs for s in m.leaves()}
    out = e
    final_vars = []
    pattern = []
    for name in sorted(multideg, key=lambda n: (-multideg[n], n)):
        k = multideg[name]
        pattern.append(k)
        sym = syms[name]
        if k == 1:
            final_vars.append(sym)
            continue
        fresh = [GenSym(f"{name}#{i}", sym.parity) for i in range(1, k + 1)]
        out = multilinearize(out, sym, fresh)
        final_vars.extend(fresh)
    return out, tuple(final_vars), tuple(pattern)


def is_identity(
    e: Expr,
    degree_cap: int = 6,
    allow_deg7: bool = False,
    cache_dir: Optional[str] = None,
    max_entries: Optional[int] = None,
) -> IdentityVerdict:
    """Decide whether e vanishes in every alternative algebra.

    The expression is split into multihomogeneous components and each
    component is polarized and reduced against the consequence space of its
    total degree.  Components of degree 6 or 7 with a repeated variable are
    decided in the copy-symmetric orbit space, which is what keeps them
    desk-sized; fully multilinear components always use the full space.  A
    nonzero residue is returned as the witness, written in the polarized
    copy variables (orbit representatives on the symmetric path).  Raises
    DegreeCapError when a component needs a polarized degree above the cap;
    the default cap is 6 and allow_deg7 lifts a default cap to 7."""
    cap = degree_cap
    if allow_deg7 and cap == 6:
        cap = 7
    if cap > 7 or (cap == 7 and not allow_deg7):
        raise ValueError("degrees above 6 require allow_deg7 (hard limit 7)")
    top = 0
    for comp in _components(e):
        degree = next(iter(comp.coeffs)).degree
        if degree > cap:
            raise DegreeCapError(degree, cap)
        if degree < 1:
            continue
        poly, vars_, pattern = _polarize(comp)
        if not poly.coeffs:
            continue
        top = max(top, degree)
        if degree < 3:
            # no consequences below degree 3: nonzero means not an identity
            return IdentityVerdict(False, top, poly)
        qbasis = MultilinearBasis(vars_)
        if degree <= 5 or all(k == 1 for k in pattern):
            space = consequence_space(degree, cache_dir, max_entries)
            residue = space.reduce_vec(to_vector(poly, qbasis))
        else:
            space = symmetric_space(degree, pattern, cache_dir, max_entries)
            groups = _groups_by_sym(vars_, pattern)
            acc: dict = {}
            for m, c in poly.coeffs.items():
                idx = qbasis.index(_canonize(m, groups))
                v = acc.get(idx, ZERO) + c
                if v:
                    acc[idx] = v
                else:
                    del acc[idx]
            residue = space.reduce_vec(tuple(sorted(acc.items())))
        if residue:
            return IdentityVerdict(False, top, from_vector(residue, qbasis))
    return IdentityVerdict(True, top, None)
