"""Exhaustive rank tallies over twist-polynomial coefficient space.

A scan fixes (q, n, degree m, leading coefficient a) and walks every
squarefree P with those parameters (optionally restricted to shift-stable P,
i.e. polynomials in θ^q - θ), tallying how many have analytic rank >= r and
keeping a bounded list of witnesses per exact rank.

Enumeration is a little-endian odometer over the free coefficients: index c
maps to coefficients (c % q, (c//q) % q, ...).  Work is split into
fixed-size chunks merged in chunk order, so the result is identical for any
worker count.  Long scans can checkpoint per-chunk tallies to a JSONL file
and resume.

Ranks come from the point-evaluation engine (exact; see fastrank).  Two
accelerations apply per chunk:

- a numpy batch screen certifies the bulk "order 0" outcome at the
  prime-field points (off the distinguished coset: rank 0; on it: the forced
  (1-U) factor is removed first, so a certificate means rank exactly 1);
- on the distinguished coset (m ≡ -n mod q-1, a_m = (-1)^n) the rank is
  computed as 1 + the vanishing order of the leading principal block's
  determinant, which restores an early exit that the forced factor would
  otherwise deny.

A deterministic 1-in-1000 subsample (index hash, capped per chunk, skipped
when the stable matrix size makes symbolic determinants expensive) is
audited against the full division-free determinant plus synthetic division.
"""

from __future__ import annotations

import json
import multiprocessing as mp
import os
from dataclasses import dataclass, field, asdict

from .ff import field_make, PrimeField
from .fastrank import RankEngine, BatchScreen, reduced_block_size
from .motive import TwistedPower, analytic_rank
from .poly import Poly, poly_to_str

__all__ = [
    "ScanSpec", "RankTable", "ScanCapError", "run_scan",
    "shift_stable_expand", "coset_audit", "dim_report", "default_workers",
]

_AUDIT_MIX = 2654435761  # Knuth multiplicative hash


class ScanCapError(RuntimeError):
    """Enumeration larger than the configured cap (pass force=True)."""


def default_workers() -> int:
    env = os.environ.get("CLRANK_WORKERS")
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


@dataclass(frozen=True)
class ScanSpec:
    q: int
    n: int
    m: int
    lead: int
    mode: str = "squarefree"  # "squarefree" | "shift-stable"
    workers: int = 0          # 0 = default_workers()
    chunk_size: int = 8192
    cap: int = 3**16
    force: bool = False
    use_batch_screen: bool = True
    audit_rate: float = 1e-3
    audit_cap: int = 16
    audit_k_cap: int = 12
    witness_cap: int = 16
    report_ranks: tuple | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.m < 1:
            raise ValueError("degree must be >= 1")
        if not 1 <= self.lead < self.q:
            raise ValueError("leading coefficient must be a nonzero residue")
        if self.mode not in ("squarefree", "shift-stable"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "shift-stable" and self.m % self.q != 0:
            raise ValueError("shift-stable scans need q | m")

    @property
    def free_coeffs(self) -> int:
        return self.m // self.q if self.mode == "shift-stable" else self.m

    @property
    def total(self) -> int:
        return self.q**self.free_coeffs

    def fingerprint(self) -> str:
        return (f"q{self.q}n{self.n}m{self.m}a{self.lead}"
                f"{self.mode}c{self.chunk_size}")


@dataclass
class RankTable:
    """Cumulative tallies count(m, a, r) = #{squarefree P : rank >= r}."""

    q: int
    n: int
    mode: str
    hist: dict = field(default_factory=dict)        # (m, a) -> {rank: count}
    witnesses: dict = field(default_factory=dict)   # (m, a, rank) -> [str]
    scanned: dict = field(default_factory=dict)     # (m, a) -> enumerated
    squarefree: dict = field(default_factory=dict)  # (m, a) -> squarefree
    audits: int = 0
    audit_failures: list = field(default_factory=list)
    report_ranks: tuple | None = None  # restrict CSV/JSON rows; None = all

    def count(self, m: int, a: int, r: int) -> int:
        h = self.hist.get((m, a), {})
        return sum(c for rank, c in h.items() if rank >= r)

    def max_rank(self, m: int | None = None, a: int | None = None) -> int:
        best = 0
        for (mm, aa), h in self.hist.items():
            if (m is None or mm == m) and (a is None or aa == a):
                best = max(best, max(h, default=0))
        return best

    def cell_witnesses(self, m: int, a: int, r: int) -> list:
        out = []
        for (mm, aa, rank), ws in sorted(self.witnesses.items()):
            if mm == m and aa == a and rank >= r:
                out.extend(ws)
        return out

    def merge(self, other: "RankTable") -> "RankTable":
        if (self.q, self.n, self.mode) != (other.q, other.n, other.mode):
            raise ValueError("incompatible tables")
        for key, h in other.hist.items():
            mine = self.hist.setdefault(key, {})
            for r, c in h.items():
                mine[r] = mine.get(r, 0) + c
        for key, ws in other.witnesses.items():
            mine = self.witnesses.setdefault(key, [])
            mine.extend(ws)
        for d_mine, d_other in ((self.scanned, other.scanned),
                                (self.squarefree, other.squarefree)):
            for key, v in d_other.items():
                d_mine[key] = d_mine.get(key, 0) + v
        self.audits += other.audits
        self.audit_failures.extend(other.audit_failures)
        return self

    def to_csv(self) -> str:
        lines = ["m,a,r,count"]
        for (m, a) in sorted(self.hist):
            ranks = self._report_ranks(m, a)
            for r in ranks:
                lines.append(f"{m},{a},{r},{self.count(m, a, r)}")
        return "\n".join(lines) + "\n"

    def _report_ranks(self, m, a):
        if self.report_ranks is not None:
            return tuple(self.report_ranks)
        top = max(self.hist.get((m, a), {0: 0}), default=0)
        return range(1, max(top, 1) + 1)

    def to_json_obj(self) -> dict:
        return {
            "q": self.q, "n": self.n, "mode": self.mode,
            "cells": [
                {"m": m, "a": a,
                 "scanned": self.scanned.get((m, a), 0),
                 "squarefree": self.squarefree.get((m, a), 0),
                 "counts": {str(r): self.count(m, a, r)
                            for r in self._report_ranks(m, a)},
                 "rank_histogram": {str(r): c
                                    for r, c in sorted(self.hist[(m, a)].items())},
                 "witnesses": {str(r): list(self.witnesses.get((m, a, r), []))
                               for r in sorted({rr for (mm, aa, rr)
                                                in self.witnesses
                                                if (mm, aa) == (m, a)})}}
                for (m, a) in sorted(self.hist)],
            "audits": self.audits,
            "audit_failures": self.audit_failures,
        }

    @classmethod
    def from_json_obj(cls, obj) -> "RankTable":
        t = cls(q=obj["q"], n=obj["n"], mode=obj["mode"])
        for cell in obj["cells"]:
            key = (cell["m"], cell["a"])
            t.hist[key] = {int(r): c for r, c in cell["rank_histogram"].items()}
            t.scanned[key] = cell.get("scanned", 0)
            t.squarefree[key] = cell.get("squarefree", 0)
            for r, ws in cell.get("witnesses", {}).items():
                t.witnesses[(cell["m"], cell["a"], int(r))] = list(ws)
        t.audits = obj.get("audits", 0)
        t.audit_failures = list(obj.get("audit_failures", []))
        return t


# -- per-chunk worker ---------------------------------------------------------

_ENGINES: dict = {}


def _engines_for(q, n, m, mode, on_coset, use_screen):
    key = (q, n, m, mode, on_coset, use_screen)
    got = _ENGINES.get(key)
    if got is None:
        shift = mode == "shift-stable"
        if on_coset:
            k = reduced_block_size(q, n, m)
        else:
            k = None
        try:
            eng = RankEngine(q, n, m, shift_stable=shift, k=k)
            kk = eng.k
            screen = BatchScreen(q, n, m, kk) if use_screen else None
        except ValueError:
            eng = None  # non-prime q: symbolic fallback
            screen = None
        got = (eng, screen)
        _ENGINES[key] = got
    return got


def _squarefree_ints(coeffs, p) -> bool:
    # gcd(P, P') on plain int lists; deg-0 constants are squarefree
    a = list(coeffs)
    if len(a) == 1:
        return True
    b = [i * a[i] % p for i in range(1, len(a))]
    while b and b[-1] == 0:
        b.pop()
    if not b:
        return False  # vanishing derivative with deg > 0: a p-th power
    while True:
        db = len(b) - 1
        inv = pow(b[-1], -1, p)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if c:
                f = c * inv % p
                for j in range(db + 1):
                    a[i - db + j] = (a[i - db + j] - f * b[j]) % p
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        if len(a) == 1 and a[0] == 0:
            return db == 0
        a, b = b, a
        if len(b) == 1:
            return True


def _expand_rows(q, m_st, m):
    # coefficient rows of (θ^q - θ)^i for i = 0..m_st over GF(q), as lists
    ctx = field_make(q)
    base = Poly(ctx, [0] * q + [1]) - Poly(ctx, [0, 1])
    rows = []
    cur = Poly.one(ctx)
    for i in range(m_st + 1):
        row = [0] * (m + 1)
        for j, c in enumerate(cur.coeffs):
            row[j] = int(c)
        rows.append(row)
        cur = cur * base
    return rows


def shift_stable_expand(c, q: int) -> Poly:
    """P = sum_i c[i] (θ^q - θ)^i from a little-endian coefficient sequence."""
    ctx = field_make(q)
    base = Poly(ctx, [0] * q + [1]) - Poly(ctx, [0, 1])
    out = Poly.zero(ctx)    # fixed by every θ -> θ + d by construction
    for i, ci in enumerate(c):
        v = ctx.from_int(int(ci))
        if v != ctx.zero:
            out = out + (base**i).scalar_mul(v)
    return out


def _scan_chunk(args):
    (q, n, m, lead, mode, start, end, use_screen,
     audit_rate, audit_cap, audit_k_cap, witness_cap) = args
    import numpy as np

    shift = mode == "shift-stable"
    on_coset = (m + n) % (q - 1) == 0 and lead == (-1) ** n % q
    eng, screen = _engines_for(q, n, m, mode, on_coset, use_screen)
    mfree = m // q if shift else m
    count = end - start

    # coefficient rows, enumeration order = odometer index
    idxs = np.arange(start, end, dtype=np.int64)
    digits = np.empty((count, mfree), dtype=np.int64)
    v = idxs.copy()
    for i in range(mfree):
        digits[:, i] = v % q
        v //= q
    if shift:
        rows_mat = np.asarray(_expand_rows(q, mfree, m), dtype=np.int64)
        free = np.concatenate(
            [digits, np.full((count, 1), lead, dtype=np.int64)], axis=1)
        coeff_rows = free @ rows_mat % q
    else:
        coeff_rows = np.concatenate(
            [digits, np.full((count, 1), lead, dtype=np.int64)], axis=1)

    sf_mask = np.zeros(count, dtype=bool)
    lists = coeff_rows.tolist()
    for i, row in enumerate(lists):
        sf_mask[i] = _squarefree_ints(row, q)

    ranks = np.zeros(count, dtype=np.int64)  # 0 = no tally
    sub_idx = np.nonzero(sf_mask)[0]
    if eng is not None:
        base_rank = 1 if on_coset else 0
        todo = sub_idx
        if screen is not None and todo.size:
            certified = screen.order_zero_mask(coeff_rows[todo])
            ranks[todo[certified]] = base_rank
            todo = todo[~certified]
        for i in todo:
            order = eng.vanishing_order(tuple(lists[i]), 0)
            ranks[i] = base_rank + order
    else:
        ctx = field_make(q)
        for i in sub_idx:
            ranks[i] = analytic_rank(TwistedPower(Poly(ctx, lists[i]), n))

    hist: dict = {}
    witnesses: dict = {}
    for i in sub_idx:
        r = int(ranks[i])
        if r >= 1:
            hist[r] = hist.get(r, 0) + 1
            w = witnesses.setdefault(r, [])
            if len(w) < witness_cap:
                w.append(",".join(str(int(x)) for x in lists[i]))

    audits = 0
    audit_failures = []
    ctx = field_make(q)
    k_min = max(1, -((m + n) // -(q - 1)))
    if audit_rate > 0 and k_min <= audit_k_cap and eng is not None:
        thresh = int(audit_rate * 2**32)
        for i in range(count):
            if audits >= audit_cap:
                break
            if (int(idxs[i]) * _AUDIT_MIX) % 2**32 >= thresh:
                continue
            if not sf_mask[i]:
                continue
            audits += 1
            slow = analytic_rank(TwistedPower(Poly(ctx, lists[i]), n))
            if slow != int(ranks[i]):
                audit_failures.append(
                    {"poly": ",".join(str(int(x)) for x in lists[i]),
                     "fast": int(ranks[i]), "symbolic": slow})

    return {
        "hist": hist,
        "witnesses": witnesses,
        "scanned": count,
        "squarefree": int(sf_mask.sum()),
        "audits": audits,
        "audit_failures": audit_failures,
    }


def _merge_chunk(table: RankTable, spec: ScanSpec, payload: dict):
    key = (spec.m, spec.lead)
    cell = table.hist.setdefault(key, {})
    for r, c in payload["hist"].items():
        r = int(r)
        cell[r] = cell.get(r, 0) + c
    for r, ws in payload["witnesses"].items():
        r = int(r)
        wkey = (spec.m, spec.lead, r)
        mine = table.witnesses.setdefault(wkey, [])
        room = spec.witness_cap - len(mine)
        if room > 0:
            mine.extend(ws[:room])
    table.scanned[key] = table.scanned.get(key, 0) + payload["scanned"]
    table.squarefree[key] = table.squarefree.get(key, 0) + payload["squarefree"]
    table.audits += payload["audits"]
    table.audit_failures.extend(payload["audit_failures"])


def run_scan(spec: ScanSpec, checkpoint: str | None = None,
             resume: bool = False) -> RankTable:
    """Execute a scan; deterministic for any worker count."""
    total = spec.total
    if total > spec.cap and not spec.force:
        raise ScanCapError(
            f"enumeration size {total} exceeds cap {spec.cap}; set force")
    chunks = []
    s = 0
    while s < total:
        e = min(s + spec.chunk_size, total)
        chunks.append((s, e))
        s = e
    done: dict = {}
    ck_handle = None
    if checkpoint:
        if resume and os.path.exists(checkpoint):
            with open(checkpoint, "r", encoding="utf-8") as fh:
                first = fh.readline()
                meta = json.loads(first) if first else {}
                if meta.get("fingerprint") != spec.fingerprint():
                    raise ValueError("checkpoint belongs to a different scan")
                for line in fh:
                    rec = json.loads(line)
                    done[rec["chunk"]] = rec["payload"]
            ck_handle = open(checkpoint, "a", encoding="utf-8")
        else:
            ck_handle = open(checkpoint, "w", encoding="utf-8")
            ck_handle.write(json.dumps(
                {"fingerprint": spec.fingerprint(),
                 "spec": asdict(spec)}) + "\n")
            ck_handle.flush()

    todo = [i for i in range(len(chunks)) if i not in done]
    args = [(spec.q, spec.n, spec.m, spec.lead, spec.mode,
             chunks[i][0], chunks[i][1], spec.use_batch_screen,
             spec.audit_rate, spec.audit_cap, spec.audit_k_cap,
             spec.witness_cap) for i in todo]
    workers = spec.workers or default_workers()
    results: dict = {}
    try:
        if workers > 1 and len(args) > 1:
            with mp.get_context("fork").Pool(workers) as pool:
                for chunk_i, payload in zip(todo, pool.imap(_scan_chunk, args)):
                    results[chunk_i] = payload
                    if ck_handle:
                        ck_handle.write(json.dumps(
                            {"chunk": chunk_i, "payload": payload}) + "\n")
                        ck_handle.flush()
        else:
            for chunk_i, a in zip(todo, args):
                payload = _scan_chunk(a)
                results[chunk_i] = payload
                if ck_handle:
                    ck_handle.write(json.dumps(
                        {"chunk": chunk_i, "payload": payload}) + "\n")
                    ck_handle.flush()
    finally:
        if ck_handle:
            ck_handle.close()

    table = RankTable(q=spec.q, n=spec.n, mode=spec.mode,
                      report_ranks=spec.report_ranks)
    for i in range(len(chunks)):
        payload = done.get(i) or results[i]
        _merge_chunk(table, spec, payload)
    return table


# -- distinguished-coset audit ------------------------------------------------

def coset_audit(q: int, n: int, m_max: int, workers: int = 0) -> dict:
    """Exhaustively check rank >= 1 on the coset m ≡ -n (q-1), a_m = (-1)^n.

    Also reports how often rank >= 1 occurs off the coset, and the coset's
    description as the (leading coefficient, m mod q-1) pair.
    """
    ctx = field_make(q)
    lead_target = (-1) ** n % q
    m_target = (-n) % (q - 1) if q > 2 else 0
    prime_q = isinstance(ctx, PrimeField)
    violations = []
    on_total = on_ge1 = off_total = off_ge1 = 0
    checked = 0
    for m in range(0, m_max + 1):
        engine = RankEngine(q, n, m) if prime_q else None
        for lead in range(1, q):
            free = q**m
            for idx in range(free):
                coeffs = []
                v = idx
                for _ in range(m):
                    coeffs.append(v % q)
                    v //= q
                coeffs.append(lead)
                checked += 1
                if engine is not None:
                    r = engine.vanishing_order(tuple(coeffs), 0)
                else:
                    r = analytic_rank(TwistedPower(Poly(ctx, coeffs), n))
                on = (q == 2) or (m % (q - 1) == m_target and lead == lead_target)
                if on:
                    on_total += 1
                    if r >= 1:
                        on_ge1 += 1
                    else:
                        violations.append(",".join(map(str, coeffs)))
                else:
                    off_total += 1
                    if r >= 1:
                        off_ge1 += 1
    return {
        "q": q, "n": n, "m_max": m_max,
        "coset": {"lead": lead_target, "m_mod_q_minus_1": m_target},
        "subgroup_index": (q - 1) ** 2,
        "checked": checked,
        "on_coset": on_total,
        "on_coset_rank_ge1": on_ge1,
        "violations": violations,
        "off_coset": off_total,
        "off_coset_rank_ge1": off_ge1,
    }


# -- parameter-count calculators ----------------------------------------------

def equation_count(r0: int, k: int) -> int:
    """Number of coefficient equations forcing rank >= r0 at matrix size k."""
    return r0 * (k + 1) - r0 * (r0 - 1) // 2


def _single_feasible(q: int, r: int, k: int) -> bool:
    # free parameters k(q-1)-1 must cover the (r-1)-extra-orders equations
    return k * (q - 1) - 1 >= (r - 1) * k - (r - 1) * (r - 2) // 2


def dim_report(q: int, r: int, mode: str = "single", m: int | None = None) -> dict:
    """Naive parameter/equation counts and the feasibility verdicts.

    ``single``: is there one k >= r making rank >= r unforced?  The maximal
    feasible r is 2q-3.  ``infinite-family``: are there infinitely many such
    k?  Maximal feasible r is q (for q >= 3).  ``shift-stable``: expected
    dimensions of the shift-stable loci for the given even/odd m/q class.
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    out = {"q": q, "r": r, "mode": mode, "single_max_r": 2 * q - 3}
    if mode == "single":
        if m is not None:
            if (m + 1) % (q - 1) != 0:
                raise ValueError("single-mode m needs q-1 | m+1")
            ks = [(m + 1) // (q - 1)]
            if not _single_feasible(q, r, ks[0]):
                ks = []
        else:
            ks = [k for k in range(max(r, 1), 4 * q + r + 10)
                  if _single_feasible(q, r, k)]
        feasible = bool(ks)
        out["feasible"] = feasible
        if feasible:
            k = ks[0]
            out["k"] = k
            out["m"] = k * (q - 1) - 1
            out["equations"] = equation_count(r - 1, k - 1)
            out["parameters"] = k * (q - 1) - 1
            out["expected_dimension"] = out["parameters"] - out["equations"]
        out["max_feasible_r"] = max(
            (rr for rr in range(1, 4 * q)
             if any(_single_feasible(q, rr, k) for k in range(rr, 8 * q + rr))),
            default=0)
        return out
    if mode == "infinite-family":
        def family_ok(rr):
            if rr < q:
                return True
            if rr == q:
                return (q - 1) * (q - 2) >= 2
            return False
        out["feasible"] = family_ok(r)
        out["max_feasible_r"] = max(rr for rr in range(1, 2 * q + 2)
                                    if family_ok(rr))
        out["family_max_r"] = q
        return out
    if mode == "shift-stable":
        if m is None or m % q != 0:
            raise ValueError("shift-stable mode needs m with q | m")
        m_st = m // q
        out["m"] = m
        out["m_st"] = m_st
        if m_st % 2 == 1:
            out["expected_dims"] = {
                "lead_-1": {"r1": m_st, "r2": (m - 3) // 6,
                            "r3": "negative"},
                "lead_1": {"r1": (m_st + 1) // 2, "r2": "negative"},
            }
        else:
            out["expected_dims"] = {
                "any_lead": {"r1": m // 6 - 1, "r2": "negative"},
            }
        return out
    raise ValueError(f"unknown mode {mode!r}")
