"""Trace-driven simulation of multi-level set-associative LRU caches.

The model is deliberately small: write-back write-allocate caches with
strict LRU replacement, scalar in-order accesses, no prefetching and no
coherence.  A demand access enters the first level and recurses along
``load_from`` links until it hits or reaches memory; the line is then
installed at every level on the path.  Evicted lines move to a
``victim_to`` target when one is configured (clean or dirty), and dirty
victims without one are written out through ``store_to``.  Only demand
accesses update the hit/miss counters; victim installs and write-backs are
tracked separately so the cycle model can stay a pure function of demand
traffic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

__all__ = [
    "LOAD",
    "STORE",
    "CacheLevelSpec",
    "HierarchySpec",
    "LevelStats",
    "SimStats",
    "CacheState",
    "build_hierarchy",
]

LOAD = "L"
STORE = "S"


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class CacheLevelSpec:
    """Geometry, policy, latency, and links of one cache level."""

    name: str
    sets: int
    ways: int
    line: int
    latency: int
    replacement: str = "LRU"
    write_back: bool = True
    load_from: Optional[str] = None
    store_to: Optional[str] = None
    victim_to: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("cache level needs a name")
        if self.sets < 1 or self.ways < 1:
            raise ValueError(f"{self.name}: sets and ways must be >= 1")
        if not _is_pow2(self.line):
            raise ValueError(f"{self.name}: line size must be a power of two, got {self.line}")
        if self.latency < 1:
            raise ValueError(f"{self.name}: latency must be >= 1")
        if self.replacement != "LRU":
            raise ValueError(
                f"{self.name}: replacement policy {self.replacement!r} not supported, "
                "only LRU"
            )
        if not self.write_back:
            raise ValueError(f"{self.name}: only write-back caches are supported")

    @property
    def capacity(self) -> int:
        return self.sets * self.ways * self.line


@dataclass(frozen=True)
class HierarchySpec:
    """An ordered cache hierarchy plus the flat memory behind it."""

    levels: tuple[CacheLevelSpec, ...]
    memory_latency: int
    first: str
    last: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(self.levels))
        if not self.levels:
            raise ValueError("hierarchy needs at least one cache level")
        if self.memory_latency < 1:
            raise ValueError("memory latency must be >= 1")
        names = [lvl.name for lvl in self.levels]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate level names in {names}")
        if self.first != names[0]:
            raise ValueError(f"first level {self.first!r} must be the innermost ({names[0]!r})")
        if self.last != names[-1]:
            raise ValueError(f"last level {self.last!r} must be the outermost ({names[-1]!r})")
        declared = set(names)
        edges: dict[str, set[str]] = {n: set() for n in names}
        for lvl in self.levels:
            for link in (lvl.load_from, lvl.store_to, lvl.victim_to):
                if link is None:
                    continue
                if link not in declared:
                    raise ValueError(f"{lvl.name}: link to undeclared level {link!r}")
                edges[lvl.name].add(link)
        # The link graph must be acyclic or victim cascades would not end.
        state: dict[str, int] = {}

        def visit(node: str) -> None:
            state[node] = 1
            for nxt in edges[node]:
                mark = state.get(nxt, 0)
                if mark == 1:
                    raise ValueError(f"cycle in cache level links at {nxt!r}")
                if mark == 0:
                    visit(nxt)
            state[node] = 2

        for n in names:
            if state.get(n, 0) == 0:
                visit(n)

    def level(self, name: str) -> CacheLevelSpec:
        for lvl in self.levels:
            if lvl.name == name:
                return lvl
        raise KeyError(name)


@dataclass(frozen=True)
class LevelStats:
    """Counter snapshot for one level."""

    name: str
    hits: int
    misses: int
    writebacks: int
    victim_installs: int

    @property
    def accesses(self) -> int:
        return self.hits + self.misses


@dataclass(frozen=True)
class SimStats:
    """Immutable counter snapshot for a whole simulation.

    ``memory_accesses`` counts demand fetches that reached memory;
    write-back traffic to memory is reported separately and never enters
    the cycle model.
    """

    levels: tuple[LevelStats, ...]
    memory_accesses: int
    memory_writebacks: int
    loads: int
    stores: int

    def level(self, name: str) -> LevelStats:
        for lvl in self.levels:
            if lvl.name == name:
                return lvl
        raise KeyError(name)

    @property
    def accesses(self) -> int:
        return self.loads + self.stores


class _Level:
    """Mutable per-level state: per-set dicts in LRU order (MRU last)."""

    __slots__ = (
        "spec",
        "nsets",
        "ways",
        "line_shift",
        "sets",
        "hits",
        "misses",
        "writebacks",
        "victim_installs",
        "load_next",
        "store_next",
        "victim_next",
    )

    def __init__(self, spec: CacheLevelSpec) -> None:
        self.spec = spec
        self.nsets = spec.sets
        self.ways = spec.ways
        self.line_shift = spec.line.bit_length() - 1
        self.sets: list[dict[int, bool]] = [dict() for _ in range(spec.sets)]
        self.hits = 0
        self.misses = 0
        self.writebacks = 0
        self.victim_installs = 0
        self.load_next: Optional[_Level] = None
        self.store_next: Optional[_Level] = None
        self.victim_next: Optional[_Level] = None


class CacheState:
    """One simulation instance; single-threaded, independent of all others."""

    def __init__(self, spec: HierarchySpec) -> None:
        self.spec = spec
        self._levels = [_Level(lvl) for lvl in spec.levels]
        self._by_name = {lvl.spec.name: lvl for lvl in self._levels}
        for lvl in self._levels:
            if lvl.spec.load_from:
                lvl.load_next = self._by_name[lvl.spec.load_from]
            if lvl.spec.store_to:
                lvl.store_next = self._by_name[lvl.spec.store_to]
            if lvl.spec.victim_to:
                lvl.victim_next = self._by_name[lvl.spec.victim_to]
        self._first = self._by_name[spec.first]
        self._min_line = min(lvl.spec.line for lvl in self._levels)
        self.memory_accesses = 0
        self.memory_writebacks = 0
        self.loads = 0
        self.stores = 0

    # -- demand path ----------------------------------------------------

    def access(
        self, op: str, address: int, size: int = 1
    ) -> tuple[tuple[str, bool], ...]:
        """Issue one demand access; returns ((level, hit), ..., ('memory', True)?).

        The access must not straddle a line boundary at any level.
        """
        if op == STORE:
            self.stores += 1
        elif op == LOAD:
            self.loads += 1
        else:
            raise ValueError(f"op must be {LOAD!r} or {STORE!r}, got {op!r}")
        if address < 0 or size < 1:
            raise ValueError(f"bad access address={address} size={size}")
        if (address & (self._min_line - 1)) + size > self._min_line:
            raise ValueError(
                f"access at {address:#x} size {size} straddles a {self._min_line}-byte line"
            )
        record: list[tuple[str, bool]] = []
        self._demand(self._first, op == STORE, address, record)
        return tuple(record)

    def run(self, events: Iterable[tuple[str, int, int]]) -> None:
        """Stream a whole trace; same semantics as access() in a tight loop."""
        first = self._first
        sets = first.sets
        nsets = first.nsets
        shift = first.line_shift
        loads = stores = hits = 0
        for op, addr, _size in events:
            line = addr >> shift
            s = sets[line % nsets]
            if op == "S":
                stores += 1
                if line in s:
                    s.pop(line)
                    s[line] = True
                    hits += 1
                    continue
            else:
                loads += 1
                if line in s:
                    s[line] = s.pop(line)
                    hits += 1
                    continue
            first.misses += 1
            nxt = first.load_next
            if nxt is None:
                self.memory_accesses += 1
            else:
                self._demand(nxt, False, addr, None)
            self._install(first, line, op == "S")
        first.hits += hits
        self.loads += loads
        self.stores += stores

    def _demand(
        self,
        lvl: _Level,
        is_store: bool,
        addr: int,
        record: Optional[list[tuple[str, bool]]],
    ) -> None:
        line = addr >> lvl.line_shift
        s = lvl.sets[line % lvl.nsets]
        if line in s:
            if is_store:
                s.pop(line)
                s[line] = True
            else:
                s[line] = s.pop(line)
            lvl.hits += 1
            if record is not None:
                record.append((lvl.spec.name, True))
            return
        lvl.misses += 1
        if record is not None:
            record.append((lvl.spec.name, False))
        nxt = lvl.load_next
        if nxt is None:
            self.memory_accesses += 1
            if record is not None:
                record.append(("memory", True))
        else:
            # The fill fetch is a load regardless of the original op.
            self._demand(nxt, False, addr, record)
        self._install(lvl, line, is_store)

    # -- fills, victims, write-backs (never touch hit/miss counters) -----

    def _install(self, lvl: _Level, line: int, dirty: bool) -> None:
        s = lvl.sets[line % lvl.nsets]
        if line in s:
            prev = s.pop(line)
            s[line] = prev or dirty
            return
        if len(s) >= lvl.ways:
            vline = next(iter(s))
            vdirty = s.pop(vline)
            self._evict(lvl, vline, vdirty)
        s[line] = dirty

    def _evict(self, lvl: _Level, vline: int, vdirty: bool) -> None:
        vaddr = vline << lvl.line_shift
        if lvl.victim_next is not None:
            lvl.victim_installs += 1
            self._install(lvl.victim_next, vaddr >> lvl.victim_next.line_shift, vdirty)
        elif vdirty:
            lvl.writebacks += 1
            if lvl.store_next is not None:
                self._install(lvl.store_next, vaddr >> lvl.store_next.line_shift, True)
            else:
                self.memory_writebacks += 1

    # -- flush and reporting ---------------------------------------------

    def flush_writeback(self) -> SimStats:
        """Write every dirty line toward memory; leaves all caches clean.

        Levels are flushed first to last so dirt pushed into an outer level
        is flushed onward in the same pass.  Returns the post-flush stats,
        which are the ones the cycle model consumes.
        """
        for lvl in self._levels:
            store_next = lvl.store_next
            for s in lvl.sets:
                dirty_lines = [line for line, dirty in s.items() if dirty]
                for line in dirty_lines:
                    s[line] = False
                    lvl.writebacks += 1
                    if store_next is not None:
                        self._install(
                            store_next, (line << lvl.line_shift) >> store_next.line_shift, True
                        )
                    else:
                        self.memory_writebacks += 1
        return self.collect_stats()

    def collect_stats(self) -> SimStats:
        return SimStats(
            levels=tuple(
                LevelStats(
                    name=lvl.spec.name,
                    hits=lvl.hits,
                    misses=lvl.misses,
                    writebacks=lvl.writebacks,
                    victim_installs=lvl.victim_installs,
                )
                for lvl in self._levels
            ),
            memory_accesses=self.memory_accesses,
            memory_writebacks=self.memory_writebacks,
            loads=self.loads,
            stores=self.stores,
        )


def build_hierarchy(spec: HierarchySpec) -> CacheState:
    """Fresh simulation state: all sets empty, all counters zero."""
    return CacheState(spec)
