"""Seeded lemma fuzzing with a deterministic, worker-count-independent report."""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from ..diagrams import LEMMA_IDS
from ..errors import BudgetExceeded, InputError
from .generators import MAX_FUZZ_ORDER, generate_lemma_instance, mix_seed

THREADS_ENV = "SEMIEXACT_THREADS"


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    trials: int = 100
    max_order: int = MAX_FUZZ_ORDER
    lemma_id: str | None = None  # None cycles through every lemma
    workers: int | None = None

    def __post_init__(self):
        if not 0 <= self.seed < 1 << 64:
            raise InputError("seed must be a 64-bit unsigned integer")
        if self.trials < 0:
            raise InputError("trials must be non-negative")
        if not 2 <= self.max_order <= MAX_FUZZ_ORDER:
            raise InputError(f"max order must lie in 2..{MAX_FUZZ_ORDER}")
        if self.lemma_id is not None and self.lemma_id not in LEMMA_IDS:
            raise InputError(f"unknown lemma id {self.lemma_id!r}")
        if self.workers is not None and self.workers < 1:
            raise InputError("workers must be positive")

    def lemma_for(self, index: int) -> str:
        return self.lemma_id or LEMMA_IDS[index % len(LEMMA_IDS)]


@dataclass(frozen=True)
class TrialRecord:
    index: int
    lemma_id: str
    seed: int
    status: str  # "holds", "refuted" or "exhausted"
    semiring: str = ""
    max_object_order: int = 0
    attempts: int = 0
    claims_applicable: tuple[str, ...] = ()
    failed: tuple[str, ...] = ()
    observations: tuple[tuple[str, bool | None], ...] = ()
    counterexample: str = ""


def run_trial(config: FuzzConfig, index: int) -> TrialRecord:
    lemma = config.lemma_for(index)
    seed = mix_seed(config.seed, index)
    try:
        d, verdict, attempts = generate_lemma_instance(lemma, seed, config.max_order)
    except BudgetExceeded:
        return TrialRecord(index, lemma, seed, "exhausted")
    failed = tuple(verdict.failed_claims())
    return TrialRecord(
        index=index,
        lemma_id=lemma,
        seed=seed,
        status="refuted" if failed else "holds",
        semiring=d.objects[0][0].semiring.name,
        max_object_order=max(M.order for row in d.objects for M in row),
        attempts=attempts,
        claims_applicable=tuple(c.name for c in verdict.claims if c.applicable and c.asserted),
        failed=failed,
        observations=tuple((c.name, c.holds) for c in verdict.observations() if c.applicable),
        counterexample=json.dumps(verdict.counterexample, sort_keys=True) if failed else "",
    )


def _run_chunk(args: tuple[FuzzConfig, int, int]) -> list[TrialRecord]:
    config, start, stop = args
    return [run_trial(config, i) for i in range(start, stop)]


def worker_count(requested: int | None = None) -> int:
    """Requested workers (default: CPU count), capped by SEMIEXACT_THREADS when set."""
    n = requested or os.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise InputError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    return n


def run_fuzz(config: FuzzConfig) -> list[TrialRecord]:
    """Every trial record, in index order whatever the number of workers."""
    workers = worker_count(config.workers)
    if workers == 1 or config.trials < 2:
        return _run_chunk((config, 0, config.trials))
    size = max(1, -(-config.trials // (workers * 4)))
    chunks = [(config, s, min(s + size, config.trials)) for s in range(0, config.trials, size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_chunk, chunks))
    records = [r for part in parts for r in part]
    records.sort(key=lambda r: r.index)
    return records


@dataclass(frozen=True)
class LemmaSummary:
    lemma_id: str
    trials: int
    satisfied: int
    exhausted: int
    refuted: int
    claim_checks: int
    observations: int
    semirings: tuple[str, ...]


def summarize(records: list[TrialRecord]) -> list[LemmaSummary]:
    out = []
    for lemma in LEMMA_IDS:
        rs = [r for r in records if r.lemma_id == lemma]
        if not rs:
            continue
        done = [r for r in rs if r.status != "exhausted"]
        out.append(LemmaSummary(
            lemma_id=lemma,
            trials=len(rs),
            satisfied=len(done),
            exhausted=len(rs) - len(done),
            refuted=sum(r.status == "refuted" for r in rs),
            claim_checks=sum(len(r.claims_applicable) for r in done),
            observations=sum(len(r.observations) for r in done),
            semirings=tuple(sorted({r.semiring for r in done})),
        ))
    return out


def digest(records: list[TrialRecord]) -> str:
    h = hashlib.sha256()
    for r in records:
        h.update(json.dumps(asdict(r), sort_keys=True).encode())
        h.update(b"\n")
    return h.hexdigest()


def report_dict(config: FuzzConfig, records: list[TrialRecord]) -> dict:
    """The machine-readable report; worker count is deliberately left out."""
    return {
        "seed": config.seed,
        "trials": config.trials,
        "max_order": config.max_order,
        "lemma_id": config.lemma_id,
        "summary": [asdict(s) for s in summarize(records)],
        "refutations": [
            {"index": r.index, "lemma_id": r.lemma_id, "seed": r.seed, "failed": list(r.failed),
             "diagram": json.loads(r.counterexample)["diagram"]}
            for r in records if r.status == "refuted"
        ],
        "digest": digest(records),
    }


def format_report(config: FuzzConfig, records: list[TrialRecord]) -> str:
    lines = [
        f"fuzz seed={config.seed} trials={config.trials} max_order={config.max_order} "
        f"lemma={config.lemma_id or 'all'}",
        f"{'lemma':<13}{'trials':>7}{'sat':>6}{'exh':>6}{'refuted':>9}{'claims':>8}{'obs':>6}  semirings",
    ]
    for s in summarize(records):
        lines.append(
            f"{s.lemma_id:<13}{s.trials:>7}{s.satisfied:>6}{s.exhausted:>6}{s.refuted:>9}"
            f"{s.claim_checks:>8}{s.observations:>6}  {','.join(s.semirings)}"
        )
    for r in records:
        if r.status == "refuted":
            lines.append(f"REFUTED trial {r.index} {r.lemma_id} seed={r.seed}: {'; '.join(r.failed)}")
            lines.append(f"  diagram: {r.counterexample}")
    lines.append(f"digest {digest(records)}")
    return "\n".join(lines) + "\n"
