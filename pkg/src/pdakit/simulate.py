"""End-to-end caching simulation driven by a placement delivery array.

Placement: user k caches packet row j of every file whenever cell (j, k) is
a star, so each of the K caches holds exactly N*Z packets (memory ratio
Z/F).  Delivery: given a demand vector d, the server walks the symbols in
ascending order and broadcasts, for each symbol s, the byte-wise XOR of
W[d_k, j] over all cells (j, k) labeled s.  Decoding: the user at term
(k, j) of slot s XORs the broadcast with its cached copies of every other
term's packet; the validity conditions guarantee those copies are cached,
and what remains is W[d_k, j].

decode_and_verify replays that procedure literally on synthetic packet
bytes: every cancellation term is first looked up in the decoder's cache
(a missing packet is reported, never skipped), files are reassembled and
compared hash-for-hash against the originals, and the measured traffic is
exactly S packets, i.e. rate S/F.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .core import STAR, PdaArray, _nonzero_sorted

DEFAULT_PACKET_SIZE = 64


@dataclass(frozen=True)
class PacketStore:
    """Synthetic file library: N files split into F packets each.

    data has shape (N, F, packet_size), dtype uint8, reproducible from the
    recorded seed.
    """

    n_files: int
    f: int
    packet_size: int
    seed: int
    data: np.ndarray

    @classmethod
    def synthetic(cls, n_files: int, f: int,
                  packet_size: int = DEFAULT_PACKET_SIZE,
                  seed: int = 0) -> "PacketStore":
        if n_files < 1 or f < 1 or packet_size < 1:
            raise ValueError("n_files, f and packet_size must be positive")
        rng = np.random.default_rng(seed)
        data = rng.integers(0, 256, size=(n_files, f, packet_size),
                            dtype=np.uint8)
        data.flags.writeable = False
        return cls(n_files, f, packet_size, seed, data)

    def packet(self, i: int, j: int) -> np.ndarray:
        """Packet j of file i, both 1-based."""
        return self.data[i - 1, j - 1]

    def file_hash(self, i: int) -> str:
        return hashlib.sha256(self.data[i - 1].tobytes()).hexdigest()


@dataclass(frozen=True)
class CacheState:
    """Per-user cache contents fixed by the star pattern."""

    star_rows: tuple[np.ndarray, ...]  # 0-based row indices per user
    n_files: int
    packet_size: int

    def packets_cached(self, user: int) -> int:
        """Cache occupancy of a user (1-based) in packets; equals N*Z."""
        return self.n_files * int(self.star_rows[user - 1].size)

    def cache_bytes(self, user: int) -> int:
        return self.packets_cached(user) * self.packet_size

    def holds(self, user: int, i: int, j: int) -> bool:
        """Whether user (1-based) caches packet j of file i."""
        return 1 <= i <= self.n_files and (j - 1) in self.star_rows[user - 1]


@dataclass(frozen=True)
class Transmission:
    symbol: int
    terms: tuple[tuple[int, int], ...]  # 1-based (user k, row j), ascending k
    payload: bytes

    def trace_line(self) -> str:
        terms = ";".join(f"({k},{j})" for k, j in self.terms)
        return f"s={self.symbol} terms={terms} payload={self.payload.hex()}"


@dataclass(frozen=True)
class TransmissionLog:
    transmissions: tuple[Transmission, ...]
    packet_size: int

    @property
    def bytes_sent(self) -> int:
        return sum(len(t.payload) for t in self.transmissions)

    def trace_lines(self) -> list[str]:
        return [t.trace_line() for t in self.transmissions]


@dataclass(frozen=True)
class UserDecodeResult:
    user: int
    demanded: int
    ok: bool
    expected_hash: str
    decoded_hash: str | None
    problems: tuple[str, ...]


@dataclass(frozen=True)
class DecodeReport:
    success: bool
    users: tuple[UserDecodeResult, ...]
    problems: tuple[str, ...]  # issues not attributable to one user
    bytes_sent: int
    rate: Fraction


def _check_store(arr: PdaArray, store: PacketStore) -> None:
    if store.f != arr.f:
        raise ValueError(
            f"store holds {store.f} packets per file, array has F={arr.f} rows")


def _check_demand(arr: PdaArray, store: PacketStore, demand) -> np.ndarray:
    d = np.asarray(list(demand), dtype=np.int64)
    if d.shape != (arr.k,):
        raise ValueError(f"demand must list {arr.k} file indices")
    if d.size and (d.min() < 1 or d.max() > store.n_files):
        raise ValueError(f"demand entries must lie in [1, {store.n_files}]")
    return d


def place(arr: PdaArray, store: PacketStore) -> CacheState:
    """Fill each user's cache from the star rows of its column."""
    _check_store(arr, store)
    star_rows = tuple(
        np.flatnonzero(arr.grid[:, k] == STAR) for k in range(arr.k)
    )
    return CacheState(star_rows, store.n_files, store.packet_size)


def deliver(arr: PdaArray, store: PacketStore, demand) -> TransmissionLog:
    """Broadcast one XOR payload per symbol, ascending symbol order."""
    _check_store(arr, store)
    d = _check_demand(arr, store, demand)
    rows, cols, symbols, starts = _nonzero_sorted(arr.grid)
    if symbols.size == 0:
        return TransmissionLog((), store.packet_size)
    gathered = store.data[d[cols] - 1, rows]
    payloads = np.bitwise_xor.reduceat(gathered, starts[:-1], axis=0)
    transmissions = []
    for g, s in enumerate(symbols):
        lo, hi = starts[g], starts[g + 1]
        terms = tuple(
            (int(cols[i]) + 1, int(rows[i]) + 1) for i in range(lo, hi)
        )
        transmissions.append(
            Transmission(int(s), terms, payloads[g].tobytes()))
    return TransmissionLog(tuple(transmissions), store.packet_size)


def decode_and_verify(arr: PdaArray, store: PacketStore, demand,
                      log: TransmissionLog) -> DecodeReport:
    """Decode every user's file from cache plus log and compare bit-exactly.

    Cache membership of every cancellation term is audited via the pair
    scan: a same-symbol pair whose cross cell is not a star is exactly a
    packet some decoder would need but does not hold.  Only when all terms
    of a slot are cached is the XOR identity applied.
    """
    _check_store(arr, store)
    d = _check_demand(arr, store, demand)
    grid = arr.grid
    f, k = arr.f, arr.k
    rows, cols, symbols, starts = _nonzero_sorted(grid)

    user_problems: dict[int, list[str]] = {u: [] for u in range(k)}
    global_problems: list[str] = []

    # structural consistency of the log with this array
    by_symbol = {t.symbol: t for t in log.transmissions}
    if log.packet_size != store.packet_size:
        global_problems.append(
            f"log packet size {log.packet_size} != store {store.packet_size}")
    if list(by_symbol) != [int(s) for s in symbols]:
        global_problems.append("log symbols do not match the array")
    else:
        for g, s in enumerate(symbols):
            t = by_symbol[int(s)]
            lo, hi = starts[g], starts[g + 1]
            expect = tuple(
                (int(cols[i]) + 1, int(rows[i]) + 1) for i in range(lo, hi))
            if t.terms != expect or len(t.payload) != store.packet_size:
                global_problems.append(f"log entry for symbol {int(s)} "
                                       "does not match the array")
                break

    # cache-membership audit: every cancellation term must be held
    for code, r1, c1, r2, c2 in _kernels.c3_pair_scan(grid, rows, cols, starts):
        s = int(grid[r1, c1])
        if code == 0:
            if c1 == c2:
                msg = (f"symbol {s} occurs twice in column {c1 + 1} "
                       f"(rows {r1 + 1}, {r2 + 1}): own packets collide")
                user_problems[c1].append(msg)
            else:
                # same-row pair: each decoder needs the other's packet, and
                # its own cell in that row is the symbol, not a star
                for user, (orow, ocol) in ((c1, (r2, c2)), (c2, (r1, c1))):
                    user_problems[user].append(
                        f"packet (file {int(d[ocol])}, row {orow + 1}) needed "
                        f"for symbol {s} shares row {r1 + 1} with user "
                        f"{user + 1}'s own term: not cached")
        else:
            if grid[r1, c2] != STAR:
                user_problems[c2].append(
                    f"packet (file {int(d[c1])}, row {r1 + 1}) needed for "
                    f"symbol {s} is not cached: cell ({r1 + 1},{c2 + 1}) "
                    "is not a star")
            if grid[r2, c1] != STAR:
                user_problems[c1].append(
                    f"packet (file {int(d[c2])}, row {r2 + 1}) needed for "
                    f"symbol {s} is not cached: cell ({r2 + 1},{c1 + 1}) "
                    "is not a star")

    # byte-level replay: payload XOR (all cached other terms) per cell
    decodable = not global_problems
    assembled = np.zeros((k, f, store.packet_size), dtype=np.uint8)
    cache = place(arr, store)
    for u in range(k):
        sr = cache.star_rows[u]
        assembled[u, sr] = store.data[d[u] - 1, sr]
    if decodable and symbols.size:
        gathered = store.data[d[cols] - 1, rows]
        totals = np.bitwise_xor.reduceat(gathered, starts[:-1], axis=0)
        counts = np.diff(starts)
        payload_rep = np.repeat(
            np.frombuffer(
                b"".join(by_symbol[int(s)].payload for s in symbols),
                dtype=np.uint8,
            ).reshape(symbols.size, store.packet_size),
            counts, axis=0)
        totals_rep = np.repeat(totals, counts, axis=0)
        decoded = payload_rep ^ totals_rep ^ gathered
        assembled[cols, rows] = decoded

    users = []
    for u in range(k):
        problems = tuple(user_problems[u])
        expected = store.file_hash(int(d[u]))
        if decodable and not problems:
            decoded_hash = hashlib.sha256(assembled[u].tobytes()).hexdigest()
            ok = decoded_hash == expected
            if not ok:
                problems = (f"decoded file differs from file {int(d[u])}",)
        else:
            decoded_hash = None
            ok = False
        users.append(UserDecodeResult(u + 1, int(d[u]), ok, expected,
                                      decoded_hash, problems))

    return DecodeReport(
        success=all(r.ok for r in users) and not global_problems,
        users=tuple(users),
        problems=tuple(global_problems),
        bytes_sent=log.bytes_sent,
        rate=Fraction(len(log.transmissions), f),
    )


def run_simulation(arr: PdaArray, store: PacketStore, demand) -> DecodeReport:
    """place + deliver + decode_and_verify in one call."""
    log = deliver(arr, store, demand)
    return decode_and_verify(arr, store, demand, log)
