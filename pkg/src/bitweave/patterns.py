"""Memory access traces of classic loop kernels.

Each pattern is a fixed loop nest over one or more arrays that share a
single bit-interleave; generators walk the nest in lexical order and emit
one event per array reference, with scalar temporaries held in registers.
Only addresses matter here: the kernels are never executed numerically.

Subscript convention: an access ``Arr(i, j)`` in matrix notation (row i,
column j) touches coordinate (j, i) — the last subscript is dimension 0,
so the rank sequence [0,0,...,1,1,...] stores each row contiguously.
Arrays declared 2^m x 2^n therefore have shape bits (n, m), and the 3-D
2^m x 2^n x 2^p arrays have bits (p, n, m).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterable, Iterator, NamedTuple, Optional

from bitweave.cachesim import LOAD, STORE
from bitweave.layout import Layout, Shape, scatter_bits

__all__ = [
    "PATTERN_KINDS",
    "PatternSpec",
    "ArrayBinding",
    "AccessEvent",
    "parse_pattern",
    "bind_arrays",
    "generate_trace",
    "trace_counts",
    "TraceCounts",
    "write_trace",
    "read_trace",
]

# kind -> names of the log2 size parameters it takes
PATTERN_KINDS = {
    "MMijk": ("m",),
    "MMTijk": ("m", "n"),
    "MMikj": ("m",),
    "MMTikj": ("m", "n"),
    "Jacobi2D": ("m", "n"),
    "Cholesky": ("m",),
    "Crout": ("m",),
    "Himeno": ("m", "n", "p"),
}

# Wider dimensions would need gigabyte lookup tables and imply traces far
# beyond anything a simulation could consume.
_MAX_TABLE_BITS = 24


class AccessEvent(NamedTuple):
    """One memory reference: op is LOAD ('L') or STORE ('S')."""

    op: str
    address: int
    size: int


class TraceCounts(NamedTuple):
    """Closed-form load/store totals; exact is False where the published
    figures are approximations rather than loop-nest counts."""

    loads: int
    stores: int
    exact: bool


@dataclass(frozen=True)
class PatternSpec:
    """A kernel kind plus its log2 extents and element size."""

    kind: str
    m: int
    n: Optional[int] = None
    p: Optional[int] = None
    element_size: int = 4

    def __post_init__(self) -> None:
        if self.kind not in PATTERN_KINDS:
            raise ValueError(
                f"unknown pattern kind {self.kind!r}; valid: {', '.join(PATTERN_KINDS)}"
            )
        wanted = PATTERN_KINDS[self.kind]
        given = {"m": self.m, "n": self.n, "p": self.p}
        for name in wanted:
            value = given.pop(name)
            if value is None:
                raise ValueError(f"{self.kind} needs parameter {name}")
            if value < 1:
                raise ValueError(f"{self.kind}: parameter {name} must be >= 1, got {value}")
        for name, value in given.items():
            if value is not None:
                raise ValueError(f"{self.kind} takes no parameter {name}")
        if self.element_size < 1:
            raise ValueError(f"element size must be >= 1, got {self.element_size}")

    @property
    def params(self) -> tuple[int, ...]:
        return tuple(
            getattr(self, name) for name in PATTERN_KINDS[self.kind]
        )

    @property
    def primary_bits(self) -> tuple[int, ...]:
        """Shape bits of the arrays the interleave chromosome targets."""
        kind, m, n, p = self.kind, self.m, self.n, self.p
        if kind in ("MMijk", "MMikj", "Cholesky", "Crout"):
            return (m, m)
        if kind in ("MMTijk", "MMTikj"):
            return (n, m)  # 2^m rows of 2^n columns; columns are dimension 0
        if kind == "Jacobi2D":
            return (n, m)
        return (p, n, m)  # Himeno

    def primary_shape(self) -> Shape:
        return Shape(self.primary_bits, self.element_size)

    def arrays(self) -> tuple[tuple[str, tuple[int, ...]], ...]:
        """(name, shape bits) of every array, in binding order."""
        prim = self.primary_bits
        kind = self.kind
        if kind in ("MMijk", "MMikj"):
            return (("A", prim), ("B", prim), ("C", prim))
        if kind in ("MMTijk", "MMTikj"):
            return (("A", prim), ("B", prim), ("C", (self.m, self.m)))
        if kind == "Jacobi2D":
            return (("src", prim), ("dst", prim))
        if kind == "Cholesky":
            return (("A", prim), ("L", prim))
        if kind == "Crout":
            return (("A", prim), ("LU", prim))
        names = ("a0", "a1", "a2", "a3", "b0", "b1", "b2", "c0", "c1", "c2", "p", "wrk")
        return tuple((name, prim) for name in names)

    def __str__(self) -> str:
        params = ",".join(str(v) for v in self.params)
        return f"{self.kind}({params};{self.element_size})"


_PATTERN_RE = re.compile(r"^\s*(\w+)\s*\(\s*([0-9]+(?:\s*,\s*[0-9]+)*)\s*;\s*([0-9]+)\s*\)\s*$")


def parse_pattern(text: str) -> PatternSpec:
    """Parse ``Kind(m[,n[,p]];s)`` syntax, e.g. ``MMijk(9;4)``."""
    match = _PATTERN_RE.match(text)
    if not match:
        raise ValueError(
            f"pattern {text!r} does not match Kind(m[,n[,p]];element_size), "
            "e.g. MMijk(9;4) or Himeno(8,7,7;4)"
        )
    kind, params_text, size_text = match.groups()
    if kind not in PATTERN_KINDS:
        raise ValueError(
            f"unknown pattern kind {kind!r}; valid: {', '.join(PATTERN_KINDS)}"
        )
    params = [int(v) for v in params_text.split(",")]
    wanted = PATTERN_KINDS[kind]
    if len(params) != len(wanted):
        raise ValueError(
            f"{kind} takes {len(wanted)} size parameter(s) ({', '.join(wanted)}), "
            f"got {len(params)}"
        )
    values = dict(zip(wanted, params))
    return PatternSpec(kind=kind, element_size=int(size_text), **values)


@dataclass(frozen=True)
class ArrayBinding:
    """One named array placed at a base byte address with its interleave."""

    name: str
    layout: Layout
    base: int

    def __post_init__(self) -> None:
        if self.base < 0:
            raise ValueError(f"{self.name}: negative base address")

    @property
    def shape(self) -> Shape:
        return self.layout.shape

    @property
    def nbytes(self) -> int:
        return self.shape.nbytes

    @property
    def end(self) -> int:
        return self.base + self.nbytes

    def address(self, coord: tuple[int, ...]) -> int:
        return self.base + self.layout.index(coord) * self.shape.element_size

    @cached_property
    def tables(self) -> tuple[list[int], ...]:
        """Per-dimension deposited-and-scaled index tables.

        ``base + (tables[0][x0] | tables[1][x1] | ...)`` is the byte address
        of coordinate (x0, x1, ...); the masks are disjoint so the terms
        never overlap.
        """
        shape = self.shape
        shift = shape.element_size.bit_length() - 1
        out = []
        for d, b in enumerate(shape.bits):
            if b > _MAX_TABLE_BITS:
                raise ValueError(
                    f"{self.name}: dimension {d} has {b} bits; trace generation "
                    f"supports at most {_MAX_TABLE_BITS} bits per dimension"
                )
            mask = self.layout.deposit_masks[d]
            out.append([scatter_bits(x, mask) << shift for x in range(1 << b)])
        return tuple(out)


def bind_arrays(spec: PatternSpec, layout: Layout, line: int = 1) -> tuple[ArrayBinding, ...]:
    """Place the pattern's arrays consecutively from address 0.

    Bases are rounded up to ``line`` bytes (a power of two); the default of
    1 packs the arrays back to back.  All arrays share the given interleave;
    the transposed multiplications' differently-shaped output derives its
    rank sequence from the same chromosome (see _adapt_layout).
    """
    if layout.shape.bits != spec.primary_bits:
        raise ValueError(
            f"layout shape bits {layout.shape.bits} do not match "
            f"{spec.kind} arrays {spec.primary_bits}"
        )
    if layout.shape.element_size != spec.element_size:
        raise ValueError(
            f"layout element size {layout.shape.element_size} != pattern "
            f"element size {spec.element_size}"
        )
    if line < 1 or (line & (line - 1)):
        raise ValueError(f"line must be a power of two, got {line}")
    bindings = []
    cursor = 0
    for name, bits in spec.arrays():
        lay = layout if bits == layout.shape.bits else _adapt_layout(layout, bits)
        base = (cursor + line - 1) & ~(line - 1)
        bindings.append(ArrayBinding(name=name, layout=lay, base=base))
        cursor = base + lay.shape.nbytes
    return tuple(bindings)


def _adapt_layout(layout: Layout, bits: tuple[int, ...]) -> Layout:
    """Derive a rank sequence for a related shape from one chromosome.

    Surplus bits of a dimension are trimmed from the significant end and
    missing ones appended there, preserving the low-order interleave that
    determines cache behaviour.  Needed only for the output array of the
    transposed multiplications when m != n.
    """
    if len(bits) != layout.shape.ndim:
        raise ValueError("adapted shape must keep the dimension count")
    ranks = list(layout.ranks)
    have = [0] * len(bits)
    for r in ranks:
        have[r] += 1
    for d, want in enumerate(bits):
        for _ in range(have[d] - want):
            # remove the last (most significant) occurrence of d
            for k in range(len(ranks) - 1, -1, -1):
                if ranks[k] == d:
                    del ranks[k]
                    break
    for d, want in enumerate(bits):
        if have[d] < want:
            ranks.extend([d] * (want - have[d]))
    return Layout(tuple(ranks), Shape(tuple(bits), layout.shape.element_size))


def generate_trace(
    spec: PatternSpec,
    layout: Layout,
    bindings: Optional[tuple[ArrayBinding, ...]] = None,
) -> Iterator[AccessEvent]:
    """Stream the kernel's access events in loop-nest order.

    A pure function of (spec, layout, bindings); with the default packed
    bindings the trace depends on nothing else.
    """
    if bindings is None:
        bindings = bind_arrays(spec, layout)
    gen = _GENERATORS[spec.kind]
    return gen(spec, bindings)


def _gen_mm_ijk(spec: PatternSpec, arrays: tuple[ArrayBinding, ...]) -> Iterator[AccessEvent]:
    a, b, c = arrays
    (a0, a1), (b0, b1), (c0, c1) = a.tables, b.tables, c.tables
    ab, bb, cb = a.base, b.base, c.base
    es = spec.element_size
    n = 1 << spec.m
    for i in range(n):
        a_row = a1[i]
        c_row = c1[i]
        for j in range(n):
            b_col = b0[j]
            # acc lives in a register; only A(i,k) and B(k,j) touch memory
            for k in range(n):
                yield AccessEvent(LOAD, ab + (a0[k] | a_row), es)
                yield AccessEvent(LOAD, bb + (b_col | b1[k]), es)
            yield AccessEvent(STORE, cb + (c0[j] | c_row), es)


def _gen_mmt_ijk(spec: PatternSpec, arrays: tuple[ArrayBinding, ...]) -> Iterator[AccessEvent]:
    a, b, c = arrays
    (a0, a1), (b0, b1), (c0, c1) = a.tables, b.tables, c.tables
    ab, bb, cb = a.base, b.base, c.base
    es = spec.element_size
    n = 1 << spec.m
    k_extent = 1 << spec.n
    for i in range(n):
        a_row = a1[i]
        c_row = c1[i]
        for j in range(n):
            b_row = b1[j]
            # C(i,j) = sum_k A(i,k) * B(j,k); B is read along its rows
            for k in range(k_extent):
                yield AccessEvent(LOAD, ab + (a0[k] | a_row), es)
                yield AccessEvent(LOAD, bb + (b0[k] | b_row), es)
            yield AccessEvent(STORE, cb + (c0[j] | c_row), es)


def _gen_mm_ikj(spec: PatternSpec, arrays: tuple[ArrayBinding, ...]) -> Iterator[AccessEvent]:
    a, b, c = arrays
    (a0, a1), (b0, b1), (c0, c1) = a.tables, b.tables, c.tables
    ab, bb, cb = a.base, b.base, c.base
    es = spec.element_size
    n = 1 << spec.m
    for i in range(n):
        a_row = a1[i]
        c_row = c1[i]
        for k in range(n):
            a_addr = ab + (a0[k] | a_row)
            b_row = b1[k]
            # C(i,j) = C(i,j) + A(i,k) * B(k,j), updated in place
            for j in range(n):
                c_addr = cb + (c0[j] | c_row)
                yield AccessEvent(LOAD, c_addr, es)
                yield AccessEvent(LOAD, a_addr, es)
                yield AccessEvent(LOAD, bb + (b0[j] | b_row), es)
                yield AccessEvent(STORE, c_addr, es)


def _gen_mmt_ikj(spec: PatternSpec, arrays: tuple[ArrayBinding, ...]) -> Iterator[AccessEvent]:
    a, b, c = arrays
    (a0, a1), (b0, b1), (c0, c1) = a.tables, b.tables, c.tables
    ab, bb, cb = a.base, b.base, c.base
    es = spec.element_size
    n = 1 << spec.m
    k_extent = 1 << spec.n
    for i in range(n):
        a_row = a1[i]
        c_row = c1[i]
        for k in range(k_extent):
            a_addr = ab + (a0[k] | a_row)
            b_col = b0[k]
            for j in range(n):
                c_addr = cb + (c0[j] | c_row)
                yield AccessEvent(LOAD, c_addr, es)
                yield AccessEvent(LOAD, a_addr, es)
                yield AccessEvent(LOAD, bb + (b_col | b1[j]), es)
                yield AccessEvent(STORE, c_addr, es)


def _gen_jacobi2d(spec: PatternSpec, arrays: tuple[ArrayBinding, ...]) -> Iterator[AccessEvent]:
    src, dst = arrays
    (s0, s1), (d0, d1) = src.tables, dst.tables
    sb, db = src.base, dst.base
    es = spec.element_size
    rows = 1 << spec.m
    cols = 1 << spec.n
    for i in range(1, rows - 1):
        up = s1[i - 1]
        row = s1[i]
        down = s1[i + 1]
        d_row = d1[i]
        for j in range(1, cols - 1):
            yield AccessEvent(LOAD, sb + (s0[j] | up), es)
            yield AccessEvent(LOAD, sb + (s0[j] | down), es)
            yield AccessEvent(LOAD, sb + (s0[j - 1] | row), es)
            yield AccessEvent(LOAD, sb + (s0[j + 1] | row), es)
            yield AccessEvent(STORE, db + (d0[j] | d_row), es)


def _gen_cholesky(spec: PatternSpec, arrays: tuple[ArrayBinding, ...]) -> Iterator[AccessEvent]:
    a, low = arrays
    (a0, a1), (l0, l1) = a.tables, low.tables
    ab, lb = a.base, low.base
    es = spec.element_size
    n = 1 << spec.m
    for i in range(n):
        l_row_i = l1[i]
        a_row_i = a1[i]
        for j in range(i + 1):
            l_row_j = l1[j]
            # s = sum_{k<j} L(i,k) * L(j,k), accumulated in a register
            for k in range(j):
                yield AccessEvent(LOAD, lb + (l0[k] | l_row_i), es)
                yield AccessEvent(LOAD, lb + (l0[k] | l_row_j), es)
            if i == j:
                # L(i,i) = sqrt(A(i,i) - s)
                yield AccessEvent(LOAD, ab + (a0[i] | a_row_i), es)
                yield AccessEvent(STORE, lb + (l0[i] | l_row_i), es)
            else:
                # L(i,j) = (A(i,j) - s) / L(j,j)
                yield AccessEvent(LOAD, ab + (a0[j] | a_row_i), es)
                yield AccessEvent(LOAD, lb + (l0[j] | l_row_j), es)
                yield AccessEvent(STORE, lb + (l0[j] | l_row_i), es)


def _gen_crout(spec: PatternSpec, arrays: tuple[ArrayBinding, ...]) -> Iterator[AccessEvent]:
    a, lu = arrays
    (a0, a1), (u0, u1) = a.tables, lu.tables
    ab, ub = a.base, lu.base
    es = spec.element_size
    n = 1 << spec.m
    for j in range(n):
        u_row_j = u1[j]
        # column j of L, diagonal included
        for i in range(j, n):
            u_row_i = u1[i]
            for k in range(j):
                yield AccessEvent(LOAD, ub + (u0[k] | u_row_i), es)
                yield AccessEvent(LOAD, ub + (u0[j] | u1[k]), es)
            # LU(i,j) = A(i,j) - s
            yield AccessEvent(LOAD, ab + (a0[j] | a1[i]), es)
            yield AccessEvent(STORE, ub + (u0[j] | u_row_i), es)
        # row j of the unit-diagonal U
        for i in range(j + 1, n):
            for k in range(j):
                yield AccessEvent(LOAD, ub + (u0[k] | u_row_j), es)
                yield AccessEvent(LOAD, ub + (u0[i] | u1[k]), es)
            # LU(j,i) = (A(j,i) - s) / LU(j,j)
            yield AccessEvent(LOAD, ab + (a0[i] | a1[j]), es)
            yield AccessEvent(LOAD, ub + (u0[j] | u_row_j), es)
            yield AccessEvent(STORE, ub + (u0[i] | u_row_j), es)


def _gen_himeno(spec: PatternSpec, arrays: tuple[ArrayBinding, ...]) -> Iterator[AccessEvent]:
    # Array order: a0..a3, b0..b2, c0..c2, p, wrk.  All share one shape;
    # wrk is the sweep destination, p the 19-point stencil source.
    coef = arrays[:10]
    pa = arrays[10]
    wrk = arrays[11]
    ctabs = [arr.tables for arr in coef]
    cbase = [arr.base for arr in coef]
    p0, p1, p2 = pa.tables
    pb = pa.base
    w0, w1, w2 = wrk.tables
    wb = wrk.base
    es = spec.element_size
    ni = 1 << spec.m
    nj = 1 << spec.n
    nk = 1 << spec.p
    for i in range(1, ni - 1):
        pi_m, pi_0, pi_p = p2[i - 1], p2[i], p2[i + 1]
        ci = [t[2][i] for t in ctabs]
        wi = w2[i]
        for j in range(1, nj - 1):
            pj_m, pj_0, pj_p = p1[j - 1], p1[j], p1[j + 1]
            # per-coefficient (base, k table, row offset) for this (i, j)
            (
                (a0b, a0t, a0o),
                (a1b, a1t, a1o),
                (a2b, a2t, a2o),
                (a3b, a3t, a3o),
                (b0b, b0t, b0o),
                (b1b, b1t, b1o),
                (b2b, b2t, b2o),
                (c0b, c0t, c0o),
                (c1b, c1t, c1o),
                (c2b, c2t, c2o),
            ) = [
                (cbase[x], ctabs[x][0], ctabs[x][1][j] | ci[x]) for x in range(10)
            ]
            w_row = w1[j] | wi
            for k in range(1, nk - 1):
                pk_m, pk_0, pk_p = p0[k - 1], p0[k], p0[k + 1]
                # s0 = a0*p(i+1,j,k) + a1*p(i,j+1,k) + a2*p(i,j,k+1)
                yield AccessEvent(LOAD, a0b + (a0t[k] | a0o), es)
                yield AccessEvent(LOAD, pb + (pk_0 | pj_0 | pi_p), es)
                yield AccessEvent(LOAD, a1b + (a1t[k] | a1o), es)
                yield AccessEvent(LOAD, pb + (pk_0 | pj_p | pi_0), es)
                yield AccessEvent(LOAD, a2b + (a2t[k] | a2o), es)
                yield AccessEvent(LOAD, pb + (pk_p | pj_0 | pi_0), es)
                #    + b0*(p(i+1,j+1,k) - p(i+1,j-1,k) - p(i-1,j+1,k) + p(i-1,j-1,k))
                yield AccessEvent(LOAD, b0b + (b0t[k] | b0o), es)
                yield AccessEvent(LOAD, pb + (pk_0 | pj_p | pi_p), es)
                yield AccessEvent(LOAD, pb + (pk_0 | pj_m | pi_p), es)
                yield AccessEvent(LOAD, pb + (pk_0 | pj_p | pi_m), es)
                yield AccessEvent(LOAD, pb + (pk_0 | pj_m | pi_m), es)
                #    + b1*(p(i,j+1,k+1) - p(i,j-1,k+1) - p(i,j+1,k-1) + p(i,j-1,k-1))
                yield AccessEvent(LOAD, b1b + (b1t[k] | b1o), es)
                yield AccessEvent(LOAD, pb + (pk_p | pj_p | pi_0), es)
                yield AccessEvent(LOAD, pb + (pk_p | pj_m | pi_0), es)
                yield AccessEvent(LOAD, pb + (pk_m | pj_p | pi_0), es)
                yield AccessEvent(LOAD, pb + (pk_m | pj_m | pi_0), es)
                #    + b2*(p(i+1,j,k+1) - p(i-1,j,k+1) - p(i+1,j,k-1) + p(i-1,j,k-1))
                yield AccessEvent(LOAD, b2b + (b2t[k] | b2o), es)
                yield AccessEvent(LOAD, pb + (pk_p | pj_0 | pi_p), es)
                yield AccessEvent(LOAD, pb + (pk_p | pj_0 | pi_m), es)
                yield AccessEvent(LOAD, pb + (pk_m | pj_0 | pi_p), es)
                yield AccessEvent(LOAD, pb + (pk_m | pj_0 | pi_m), es)
                #    + c0*p(i-1,j,k) + c1*p(i,j-1,k) + c2*p(i,j,k-1)
                yield AccessEvent(LOAD, c0b + (c0t[k] | c0o), es)
                yield AccessEvent(LOAD, pb + (pk_0 | pj_0 | pi_m), es)
                yield AccessEvent(LOAD, c1b + (c1t[k] | c1o), es)
                yield AccessEvent(LOAD, pb + (pk_0 | pj_m | pi_0), es)
                yield AccessEvent(LOAD, c2b + (c2t[k] | c2o), es)
                yield AccessEvent(LOAD, pb + (pk_m | pj_0 | pi_0), es)
                # wrk = p + omega*(s0*a3 - p); p(i,j,k) is loaded once
                yield AccessEvent(LOAD, a3b + (a3t[k] | a3o), es)
                yield AccessEvent(LOAD, pb + (pk_0 | pj_0 | pi_0), es)
                yield AccessEvent(STORE, wb + (w0[k] | w_row), es)


_GENERATORS = {
    "MMijk": _gen_mm_ijk,
    "MMTijk": _gen_mmt_ijk,
    "MMikj": _gen_mm_ikj,
    "MMTikj": _gen_mmt_ikj,
    "Jacobi2D": _gen_jacobi2d,
    "Cholesky": _gen_cholesky,
    "Crout": _gen_crout,
    "Himeno": _gen_himeno,
}


def trace_counts(spec: PatternSpec) -> TraceCounts:
    """Closed-form load/store totals per pattern.

    Exact for the four multiplication nests; the stencil figures cover
    interior points only and the factorization figures are published
    approximations, so those carry exact=False.
    """
    kind, m, n, p = spec.kind, spec.m, spec.n, spec.p
    if kind == "MMijk":
        return TraceCounts(2 * (1 << (3 * m)), 1 << (2 * m), True)
    if kind == "MMTijk":
        return TraceCounts(2 * (1 << (2 * m + n)), 1 << (2 * m), True)
    if kind == "MMikj":
        return TraceCounts(3 * (1 << (3 * m)), 1 << (3 * m), True)
    if kind == "MMTikj":
        return TraceCounts(3 * (1 << (2 * m + n)), 1 << (2 * m + n), True)
    if kind == "Jacobi2D":
        return TraceCounts(4 * (1 << (m + n)), 1 << (m + n), False)
    if kind == "Cholesky":
        return TraceCounts(2 * (1 << (2 * m)), (1 << (2 * m)) // 2, False)
    if kind == "Crout":
        return TraceCounts(7 * (1 << (2 * m)) // 2, 1 << (2 * m), False)
    return TraceCounts(24 * (1 << (m + n + p)), 1 << (m + n + p), False)  # Himeno


def write_trace(events: Iterable[AccessEvent], stream: IO[str]) -> int:
    """Write one ``L 0x<addr>`` / ``S 0x<addr>`` line per event."""
    count = 0
    for op, address, _size in events:
        stream.write(f"{op} {address:#x}\n")
        count += 1
    return count


def read_trace(stream: Iterable[str], size: int = 1) -> Iterator[AccessEvent]:
    """Parse write_trace output back into events (sizes are not recorded)."""
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in (LOAD, STORE):
            raise ValueError(f"line {lineno}: bad trace line {line!r}")
        yield AccessEvent(parts[0], int(parts[1], 16), size)
