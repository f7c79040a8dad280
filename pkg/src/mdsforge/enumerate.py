"""Enumeration of representative, MDS and involutory MDS matrices.

Everything is driven by the representatives: matrices with an all-ones first
row and column whose interior R passes the interior conditions.  The full MDS
set is every diagonal sandwich D1 * M1 * D2 (D2 starting with 1), and the
involutory MDS set is the family attached to each representative that has an
involution certificate.

Work is split into blocks along an outer cursor:

    n = 2      one block
    n = 3      one block per first interior row (a, b)
    n = 4      one block per valid order-3 class (a, b, c, d), through the
               nested parameterisation in `nested` / `_kernels.rep4_block`
    n >= 5     one block per leading interior entry, plain scan + is_mds

Counting runs blocks on a thread pool (the compiled kernels release the GIL)
and can checkpoint after every block.  Streams are produced in one canonical
order: representatives ascending by R (row-major codes); for each
representative D2 varies slowest and D1 fastest, both lexicographic.
"""

from __future__ import annotations

import enum
import functools
import hashlib
import itertools
import json
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator, Optional

import numpy as np

from . import _kernels as K
from .decomp import certify
from .errors import CheckpointMismatch, LimitExceeded, UsageError
from .gf import Field
from .matlin import SquareMatrix, bordered
from .mdscheck import check_r, check_r_order2, is_mds
from .nested import interior as nested_interior, nested_passes

DEFAULT_STREAM_LIMIT = 10**8
# Streams whose exact size is unknown up front are sized by a counting pass,
# which is refused when the candidate space is larger than this.
SCAN_BUDGET = 10**9
BRUTE_FORCE_LIMIT = 2**30
CHECKPOINT_VERSION = 1


class Kind(enum.Enum):
    REPRESENTATIVES = "representatives"
    ALL_MDS = "mds"
    ALL_INVOLUTORY = "involutory"


class Mode(enum.Enum):
    STREAM = "stream"
    COUNT_ONLY = "count"


@dataclass(frozen=True)
class EnumSpec:
    field: Field
    n: int
    kind: Kind = Kind.REPRESENTATIVES
    mode: Mode = Mode.STREAM
    limit: int = DEFAULT_STREAM_LIMIT

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise UsageError(f"order must be an integer >= 2, got {self.n!r}")
        if self.limit < 0:
            raise UsageError("stream limit must be non-negative")

    def canonical(self) -> str:
        return f"{self.field.spec_string()}|n={self.n}|kind={self.kind.value}"

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()


def multiplicity(field: Field, n: int, kind: Kind) -> int:
    """Matrices contributed per representative (per certified one for involutory)."""
    q = field.q
    if kind is Kind.REPRESENTATIVES:
        return 1
    if kind is Kind.ALL_MDS:
        return (q - 1) ** (2 * n - 1)
    # alpha and -alpha give disjoint families unless the characteristic is 2
    return (q - 1) ** (n - 1) * (1 if field.p == 2 else 2)


def _total(field: Field, n: int, kind: Kind, reps: int, cert: int) -> int:
    base = cert if kind is Kind.ALL_INVOLUTORY else reps
    return base * multiplicity(field, n, kind)


# --- block plans -------------------------------------------------------------------

def _use_kernels(field: Field) -> bool:
    return field.q <= K.KERNEL_MAX_Q


@functools.lru_cache(maxsize=32)
def _rep3_table(field: Field) -> np.ndarray:
    """All order-3 classes as rows (a, b, c, d, certified), ascending."""
    q = field.q
    rows = []
    if _use_kernels(field):
        t = K.field_tables(field)
        out = np.zeros((max(q - 2, 0) ** 2, 3), np.int64)
        for a in range(2, q):
            for b in range(2, q):
                _, _, k = K.rep3_block(a, b, q, *t.args(), out)
                for c, d, flag in out[:k].tolist():
                    rows.append((a, b, c, d, flag))
    else:
        for a, b, c, d in itertools.product(range(2, q), repeat=4):
            if check_r_order2(field, a, b, c, d):
                m1 = bordered(field, ((a, b), (c, d)))
                rows.append((a, b, c, d, int(certify(m1).certificate is not None)))
    arr = np.array(rows, dtype=np.int64).reshape(-1, 5)
    arr.setflags(write=False)
    return arr


class _Plan:
    """Block decomposition of the representative search for one (field, n)."""

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        q = field.q
        if n == 2:
            self.blocks = [()]
        elif n == 3:
            self.blocks = [(a, b) for a in range(2, q) for b in range(2, q) if a != b]
        elif n == 4:
            self.blocks = [tuple(r[:4]) for r in _rep3_table(field).tolist()]
        else:
            self.blocks = [(x,) for x in range(2, q)]

    def candidate_space(self) -> int:
        q, n = self.field.q, self.n
        if n == 2:
            return q
        if n == 3:
            return len(self.blocks) * (q - 2) ** 2
        if n == 4:
            return len(self.blocks) * (q - 2) ** 5
        return len(self.blocks) * (q - 2) ** ((n - 1) ** 2 - 1)

    def warm_up(self) -> None:
        # trigger compilation in the calling thread before workers start
        if not _use_kernels(self.field) or self.n not in (3, 4):
            return
        t = K.field_tables(self.field)
        empty = np.zeros((0, 10), np.int64)
        if self.n == 3:
            K.rep3_block(0, 0, self.field.q, *t.args(), empty)
        else:
            K.rep4_block(2, 3, 4, 5, 2, *t.args(), empty)

    def run(self, i: int, emit: bool = False):
        """(representatives, certified, interiors, flags) of block ``i``.

        ``interiors`` is a (k, n-1, n-1) array and ``flags`` the certificate
        flags, both None unless ``emit``.
        """
        key = self.blocks[i]
        f, n = self.field, self.n
        if n == 3 and _use_kernels(f):
            return self._run3_kernel(*key, emit)
        if n == 4 and _use_kernels(f):
            return self._run4_kernel(*key, emit)
        if n == 2:
            rows = [((a,),) for a in range(2, f.q)]
        elif n == 3:
            a, b = key
            rows = [((a, b), (c, d)) for c in range(2, f.q) for d in range(2, f.q)
                    if check_r_order2(f, a, b, c, d)]
        elif n == 4:
            rows = _nested_python(f, *key)
        else:
            rows = _literal_python(f, n, key[0])
        flags = [int(certify(bordered(f, r)).certificate is not None) for r in rows]
        if not emit:
            return len(rows), sum(flags), None, None
        arr = np.array(rows, dtype=np.int64).reshape(-1, n - 1, n - 1)
        return len(rows), sum(flags), arr, np.array(flags, dtype=np.int64)

    def _run3_kernel(self, a, b, emit):
        q = self.field.q
        t = K.field_tables(self.field)
        out = np.zeros(((q - 2) ** 2 if emit else 0, 3), np.int64)
        reps, cert, k = K.rep3_block(a, b, q, *t.args(), out)
        if not emit:
            return reps, cert, None, None
        hits = out[:k]
        arr = np.empty((k, 2, 2), np.int64)
        arr[:, 0, 0] = a
        arr[:, 0, 1] = b
        arr[:, 1, 0] = hits[:, 0]
        arr[:, 1, 1] = hits[:, 1]
        return reps, cert, arr, hits[:, 2].copy()

    def _run4_kernel(self, a, b, c, d, emit):
        q = self.field.q
        t = K.field_tables(self.field)
        cap = 1024 if emit else 0
        while True:
            out = np.zeros((cap, 10), np.int64)
            reps, cert, k = K.rep4_block(a, b, c, d, q, *t.args(), out)
            if k <= cap or not emit:
                break
            cap = k
        if not emit:
            return reps, cert, None, None
        hits = out[:k]
        return reps, cert, hits[:, :9].reshape(k, 3, 3).copy(), hits[:, 9].copy()


@functools.lru_cache(maxsize=32)
def _plan(field: Field, n: int) -> _Plan:
    return _Plan(field, n)


def _nested_python(f: Field, a, b, c, d):
    rows = []
    for t2, t3, l1, l2, l3 in itertools.product(range(1, f.q), repeat=5):
        if nested_passes(f, a, b, c, d, l1, l2, l3, t2, t3):
            rows.append(nested_interior(f, a, b, c, d, l1, l2, l3, t2, t3))
    return rows


def _literal_python(f: Field, n: int, first: int):
    """Interiors with leading entry ``first``, by scanning every candidate."""
    k = n - 1
    rows = []
    # entries equal to 1 fail the interior conditions outright
    for rest in itertools.product(range(2, f.q), repeat=k * k - 1):
        flat = (first, *rest)
        r = tuple(flat[i * k:(i + 1) * k] for i in range(k))
        rs = SquareMatrix._trusted(f, r)
        if check_r(rs):
            continue
        if n >= 5 and not is_mds(bordered(f, r)):
            continue
        rows.append(r)
    return rows


def representatives_literal(field: Field, n: int) -> np.ndarray:
    """Interiors of all order-n representatives from a scan of every R over F*.

    This is the route with no structural shortcut, kept as a cross-check on
    the block plans.  Returns a (k, n-1, n-1) array in ascending order.
    """
    if n < 2:
        raise UsageError("order must be >= 2")
    q = field.q
    k = n - 1
    if n == 4 and _use_kernels(field):
        t = K.field_tables(field)
        chunks = []
        for first in range(1, q):
            cap = 4096
            while True:
                out = np.zeros((cap, 9), np.int64)
                cnt = K.literal4_scan(first, q, t.mul, t.add, t.neg, out)
                if cnt <= cap:
                    break
                cap = cnt
            chunks.append(out[:cnt])
        flat = np.concatenate(chunks) if chunks else np.zeros((0, 9), np.int64)
    else:
        rows = []
        for cand in itertools.product(range(1, q), repeat=k * k):
            r = tuple(cand[i * k:(i + 1) * k] for i in range(k))
            if check_r(SquareMatrix._trusted(field, r)):
                continue
            if n >= 5 and not is_mds(bordered(field, r)):
                continue
            rows.append(cand)
        flat = np.array(rows, dtype=np.int64).reshape(-1, k * k)
    return _sort_rows(flat).reshape(-1, k, k)


def _sort_rows(flat: np.ndarray) -> np.ndarray:
    if len(flat) == 0:
        return flat
    order = np.lexsort(flat.T[::-1])
    return flat[order]


# --- streams -------------------------------------------------------------------------

def _representative_blocks(field: Field, n: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """(interiors, flags) chunks in ascending interior order."""
    plan = _plan(field, n)
    if n == 4:
        # the nested parameterisation does not produce R in ascending order
        chunks = [plan.run(i, emit=True) for i in range(len(plan.blocks))]
        if not chunks:
            return
        inter = np.concatenate([c[2].reshape(-1, 9) for c in chunks])
        flags = np.concatenate([c[3] for c in chunks])
        order = np.lexsort(inter.T[::-1])
        yield inter[order].reshape(-1, 3, 3), flags[order]
        return
    for i in range(len(plan.blocks)):
        _, _, inter, flags = plan.run(i, emit=True)
        if len(inter):
            yield inter, flags


def _bordered_array(inter: np.ndarray) -> np.ndarray:
    k = inter.shape[0]
    n = inter.shape[1] + 1
    out = np.ones((k, n, n), np.int64)
    out[:, 1:, 1:] = inter
    return out


def _nonzero_vectors(q: int, length: int) -> np.ndarray:
    """All vectors over F* of the given length, lexicographic."""
    if length == 0:
        return np.zeros((1, 0), np.int64)
    grids = np.meshgrid(*([np.arange(1, q, dtype=np.int64)] * length), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


class _Arith:
    """Vectorised multiplication over code arrays, tabled when the field is small."""

    def __init__(self, field: Field):
        self.field = field
        self.table = K.field_tables(field).mul if _use_kernels(field) else None

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.table is not None:
            return self.table[x, y]
        x, y = np.broadcast_arrays(x, y)
        f = self.field
        return np.vectorize(f.mul, otypes=[np.int64])(x, y)

    def inv(self, x: np.ndarray) -> np.ndarray:
        if self.table is not None:
            return K.field_tables(self.field).inv[x]
        return np.vectorize(self.field.inv, otypes=[np.int64])(x)


def _check_stream(spec: EnumSpec, kind: Kind) -> None:
    if spec.kind is not kind:
        raise UsageError(f"spec kind is {spec.kind.value}, expected {kind.value}")
    plan = _plan(spec.field, spec.n)
    per = multiplicity(spec.field, spec.n, kind)
    bound = plan.candidate_space() * per
    if bound <= spec.limit:
        return
    if plan.candidate_space() > SCAN_BUDGET:
        raise LimitExceeded(
            f"stream over {spec.canonical()} is too large to size up front; "
            "use count-only mode")
    exact = count(EnumSpec(spec.field, spec.n, kind, Mode.COUNT_ONLY)).count
    if exact > spec.limit:
        raise LimitExceeded(
            f"stream would yield {exact} matrices, above the limit of {spec.limit}")


def iter_blocks(spec: EnumSpec) -> Iterator[np.ndarray]:
    """The stream of ``spec`` as (k, n, n) code arrays, in canonical order.

    The size guard runs before anything is produced.
    """
    _check_stream(spec, spec.kind)
    return _blocks(spec)


def _blocks(spec: EnumSpec) -> Iterator[np.ndarray]:
    f, n = spec.field, spec.n
    q = f.q
    if spec.kind is Kind.REPRESENTATIVES:
        for inter, _ in _representative_blocks(f, n):
            yield _bordered_array(inter)
        return
    ar = _Arith(f)
    if spec.kind is Kind.ALL_MDS:
        lams = _nonzero_vectors(q, n)
        thetas = _nonzero_vectors(q, n - 1)
        for inter, _ in _representative_blocks(f, n):
            for m1 in _bordered_array(inter):
                left = ar.mul(lams[:, :, None], m1[None, :, :])
                for th in thetas:
                    d2 = np.concatenate(([1], th))
                    yield ar.mul(left, d2[None, None, :])
        return
    lams = _nonzero_vectors(q, n - 1)
    for inter, flags in _representative_blocks(f, n):
        for m1, flag in zip(_bordered_array(inter), flags):
            if not flag:
                continue
            m1s = SquareMatrix._trusted(f, tuple(map(tuple, m1.tolist())))
            cert = certify(m1s).certificate
            signs = [cert] if f.p == 2 else [cert, cert.negated()]
            for c in signs:
                alphas = np.array(c.alphas, dtype=np.int64)
                d1 = np.empty((len(lams), n), np.int64)
                d1[:, 0] = alphas[0]
                d1[:, 1:] = lams
                d2 = np.ones((len(lams), n), np.int64)
                d2[:, 1:] = ar.mul(alphas[None, 1:], ar.inv(lams))
                yield ar.mul(ar.mul(d1[:, :, None], m1[None, :, :]), d2[:, None, :])


def _as_matrices(field: Field, blocks: Iterator[np.ndarray]) -> Iterator[SquareMatrix]:
    for arr in blocks:
        for m in arr.tolist():
            yield SquareMatrix._trusted(field, tuple(map(tuple, m)))


def enum_representatives(spec: EnumSpec) -> Iterator[SquareMatrix]:
    _check_stream(spec, Kind.REPRESENTATIVES)
    return _as_matrices(spec.field, _blocks(spec))


def enum_mds(spec: EnumSpec) -> Iterator[SquareMatrix]:
    _check_stream(spec, Kind.ALL_MDS)
    return _as_matrices(spec.field, _blocks(spec))


def enum_involutory(spec: EnumSpec) -> Iterator[SquareMatrix]:
    _check_stream(spec, Kind.ALL_INVOLUTORY)
    return _as_matrices(spec.field, _blocks(spec))


# --- counting and checkpoints -----------------------------------------------------

@dataclass
class Checkpoint:
    """Progress of a count: a done prefix of blocks plus finished blocks beyond it."""

    digest: str
    spec: str
    blocks: int
    cursor: int = 0
    representatives: int = 0
    certified: int = 0
    pending: dict = dc_field(default_factory=dict)
    timestamp: float = 0.0

    def is_done(self, i: int) -> bool:
        return i < self.cursor or i in self.pending

    def record(self, i: int, reps: int, cert: int) -> None:
        self.pending[i] = (reps, cert)
        while self.cursor in self.pending:
            r, c = self.pending.pop(self.cursor)
            self.representatives += r
            self.certified += c
            self.cursor += 1

    def totals(self) -> tuple[int, int]:
        r = self.representatives + sum(v[0] for v in self.pending.values())
        c = self.certified + sum(v[1] for v in self.pending.values())
        return r, c

    def done_count(self) -> int:
        return self.cursor + len(self.pending)

    def to_json(self) -> dict:
        return {
            "version": CHECKPOINT_VERSION,
            "digest": self.digest,
            "spec": self.spec,
            "blocks": self.blocks,
            "cursor": self.cursor,
            # decimal strings keep counts exact whatever their size
            "representatives": str(self.representatives),
            "certified": str(self.certified),
            "pending": {str(i): [str(r), str(c)] for i, (r, c) in sorted(self.pending.items())},
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Checkpoint":
        if obj.get("version") != CHECKPOINT_VERSION:
            raise CheckpointMismatch(f"unsupported checkpoint version {obj.get('version')!r}")
        return cls(
            digest=obj["digest"],
            spec=obj["spec"],
            blocks=int(obj["blocks"]),
            cursor=int(obj["cursor"]),
            representatives=int(obj["representatives"]),
            certified=int(obj["certified"]),
            pending={int(i): (int(r), int(c)) for i, (r, c) in obj["pending"].items()},
            timestamp=float(obj["timestamp"]),
        )

    def save(self, path: str) -> None:
        self.timestamp = time.time()
        tmp = f"{path}.tmp"
        with open(tmp, "w") as fh:
            json.dump(self.to_json(), fh)
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str) -> "Checkpoint":
        try:
            with open(path) as fh:
                return cls.from_json(json.load(fh))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise CheckpointMismatch(f"unreadable checkpoint {path}: {exc}") from None


@dataclass(frozen=True)
class CountResult:
    spec: EnumSpec
    count: int
    representatives: int
    certified: int
    blocks: int
    blocks_done: int
    resumed: bool
    complete: bool
    elapsed: float

    def to_json(self, stable: bool = False) -> dict:
        out = {
            "field": self.spec.field.spec_string(),
            "order": self.spec.n,
            "kind": self.spec.kind.value,
            "count": str(self.count),
            "representatives": str(self.representatives),
            "certified": str(self.certified),
            "blocks": self.blocks,
            "blocks_done": self.blocks_done,
            "resumed": self.resumed,
            "complete": self.complete,
        }
        if not stable:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def count(
    spec: EnumSpec,
    workers: int = 1,
    checkpoint: Optional[str] = None,
    max_blocks: Optional[int] = None,
    progress: Optional[Callable[[int, int], None]] = None,
) -> CountResult:
    """Exact size of the task described by ``spec``, whatever its mode.

    Blocks are handed out from a shared queue to ``workers`` threads.  With
    ``checkpoint`` the state is written after every finished block and an
    existing file for the same task is resumed; a file for a different task
    is refused.  ``max_blocks`` stops after that many blocks in this call,
    leaving a resumable checkpoint (the result then has complete=False).
    """
    if workers < 1:
        raise UsageError("worker count must be positive")
    t0 = time.perf_counter()
    f, n = spec.field, spec.n
    plan = _plan(f, n)
    nb = len(plan.blocks)
    resumed = False
    ck = None
    if checkpoint and os.path.exists(checkpoint):
        ck = Checkpoint.load(checkpoint)
        if ck.digest != spec.digest() or ck.blocks != nb:
            raise CheckpointMismatch(
                f"checkpoint {checkpoint} belongs to {ck.spec!r}, not {spec.canonical()!r}")
        resumed = True
    if ck is None:
        ck = Checkpoint(spec.digest(), spec.canonical(), nb)

    todo = iter([i for i in range(nb) if not ck.is_done(i)])
    lock = threading.Lock()
    budget = [max_blocks]

    def take() -> Optional[int]:
        with lock:
            if budget[0] is not None:
                if budget[0] <= 0:
                    return None
                budget[0] -= 1
            return next(todo, None)

    def work() -> None:
        while (i := take()) is not None:
            reps, cert, _, _ = plan.run(i)
            with lock:
                ck.record(i, reps, cert)
                if checkpoint:
                    ck.save(checkpoint)
                if progress:
                    progress(ck.done_count(), nb)

    plan.warm_up()
    if workers == 1:
        work()
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(work) for _ in range(workers)]
            for fut in futures:
                fut.result()

    reps, cert = ck.totals()
    done = ck.done_count()
    return CountResult(
        spec=spec,
        count=_total(f, n, spec.kind, reps, cert),
        representatives=reps,
        certified=cert,
        blocks=nb,
        blocks_done=done,
        resumed=resumed,
        complete=done == nb,
        elapsed=time.perf_counter() - t0,
    )


# --- brute-force oracles ------------------------------------------------------------

@dataclass(frozen=True)
class BruteForceResult:
    count: int
    digest: str


def set_digest(codes: np.ndarray) -> str:
    """Order-independent digest of a set of matrices given as a (k, n, n) array."""
    codes = np.asarray(codes, dtype=np.int64)
    flat = codes.reshape(len(codes), -1) if len(codes) else codes.reshape(0, 0)
    flat = _sort_rows(flat)
    h = hashlib.sha256()
    h.update(str(flat.shape).encode())
    h.update(np.ascontiguousarray(flat, dtype="<i8").tobytes())
    return h.hexdigest()


def stream_digest(spec: EnumSpec) -> BruteForceResult:
    """Count and set digest of a stream, for comparison with the brute-force oracles."""
    blocks = list(iter_blocks(spec))
    n = spec.n
    arr = np.concatenate(blocks) if blocks else np.zeros((0, n, n), np.int64)
    return BruteForceResult(len(arr), set_digest(arr))


class _ExactArith:
    """Table arithmetic for the oracles, independent of the compiled kernels."""

    def __init__(self, field: Field):
        q = field.q
        codes = range(q)
        self.mul = np.array([[field.mul(x, y) for y in codes] for x in codes], np.int64)
        self.add = np.array([[field.add(x, y) for y in codes] for x in codes], np.int64)
        self.neg = np.array([field.neg(x) for x in codes], np.int64)


def _vdet(ar: _ExactArith, mats: np.ndarray) -> np.ndarray:
    """Determinants of a stack of k x k code matrices by cofactor expansion."""
    k = mats.shape[-1]
    if k == 1:
        return mats[..., 0, 0]
    acc = np.zeros(mats.shape[:-2], np.int64)
    for j in range(k):
        sub = np.delete(np.delete(mats, 0, axis=-2), j, axis=-1)
        term = ar.mul[mats[..., 0, j], _vdet(ar, sub)]
        acc = ar.add[acc, term if j % 2 == 0 else ar.neg[term]]
    return acc


def _all_matrices(q: int, n: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    cells = n * n
    out = np.empty((len(idx), cells), np.int64)
    for t in range(cells):
        out[:, t] = (idx // q ** (cells - 1 - t)) % q
    return out.reshape(-1, n, n)


def _brute_mds_chunks(field: Field, n: int, chunk: int = 1 << 18) -> Iterator[np.ndarray]:
    q = field.q
    total = q ** (n * n)
    if total > BRUTE_FORCE_LIMIT:
        raise UsageError(f"brute force over {total} matrices exceeds the 2^30 limit")
    ar = _ExactArith(field)
    for start in range(0, total, chunk):
        mats = _all_matrices(q, n, start, min(total, start + chunk))
        mats = mats[(mats != 0).all(axis=(1, 2))]
        for k in range(2, n + 1):
            for rs in itertools.combinations(range(n), k):
                for cs in itertools.combinations(range(n), k):
                    if not len(mats):
                        break
                    sub = mats[:, rs][:, :, cs]
                    mats = mats[_vdet(ar, sub) != 0]
        yield mats


def brute_force_mds(field: Field, n: int) -> BruteForceResult:
    """Every n x n matrix over the field (zeros included) tested for the MDS property."""
    chunks = list(_brute_mds_chunks(field, n))
    arr = np.concatenate(chunks)
    return BruteForceResult(len(arr), set_digest(arr))


def brute_force_involutory(field: Field, n: int) -> BruteForceResult:
    """Every involutory MDS matrix of order n, by exhaustive search."""
    ar = _ExactArith(field)
    eye = np.eye(n, dtype=np.int64)
    kept = []
    for mats in _brute_mds_chunks(field, n):
        sq = np.zeros_like(mats)
        for t in range(n):
            sq = ar.add[sq, ar.mul[mats[:, :, t][:, :, None], mats[:, t, :][:, None, :]]]
        kept.append(mats[(sq == eye).all(axis=(1, 2))])
    arr = np.concatenate(kept)
    return BruteForceResult(len(arr), set_digest(arr))
