"""Seeded Monte Carlo census of real ranks.

Sample ``i`` of a run is drawn with seed ``sample_seed(master_seed, i)``:
the first 8 bytes (big-endian) of ``SHA-256(b"waring-census" || enc(master)
|| enc(i))`` where ``enc`` writes an integer modulo ``2**64`` as 8
big-endian bytes (two's complement for negatives, so derived seeds can be
fed back in).  Every sample depends on its own seed only, so reports do not
depend on worker count or scheduling.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import __version__
from .forms import COEFF_DENOM, BinaryForm, is_squarefree, random_form
from .hypdecide import DEFAULT_TRIALS
from .rank import RankCertificate, classify

SCHEMA = 1
REJECTED = "rejected_nonsquarefree"
NONGENERIC = "nongeneric_stratum"
EXAMPLES_PER_LABEL = 3
MAX_RESAMPLES = 100


class ReportSchemaError(ValueError):
    pass


def sample_seed(*parts: int) -> int:
    h = hashlib.sha256(b"waring-census")
    for p in parts:
        h.update((int(p) % 2**64).to_bytes(8, "big"))
    return int.from_bytes(h.digest()[:8], "big")


@dataclass(frozen=True)
class CensusConfig:
    degree: int
    samples: int
    master_seed: int = 0
    distribution: str = "uniform_normalized"
    trials: int = DEFAULT_TRIALS
    stability_eps: str = "1/65536"
    stability_probes: int = 0
    resample_on_reject: bool = False
    denom: int = COEFF_DENOM

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.degree < 1:
            raise ValueError("degree must be at least 1")
        Fraction(self.stability_eps)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, obj: dict) -> "CensusConfig":
        return cls(**obj)


@dataclass(frozen=True)
class SampleResult:
    index: int
    seed: int
    labels: tuple  # rejections first, final outcome last
    stable: Optional[bool] = None


@dataclass
class CensusReport:
    config: CensusConfig
    counts: Dict[str, int]
    examples: Dict[str, List[dict]]
    stability: Optional[dict] = None
    elapsed_ms: Optional[int] = None
    version: str = __version__

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "version": self.version,
            "config": self.config.to_dict(),
            "counts": dict(sorted(self.counts.items())),
            "examples": dict(sorted(self.examples.items())),
            "stability": self.stability,
            "elapsed_ms": self.elapsed_ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> "CensusReport":
        if obj.get("schema") != SCHEMA:
            raise ReportSchemaError(f"report schema {obj.get('schema')!r} is not {SCHEMA}")
        return cls(
            config=CensusConfig.from_dict(obj["config"]),
            counts=dict(obj["counts"]),
            examples=dict(obj["examples"]),
            stability=obj.get("stability"),
            elapsed_ms=obj.get("elapsed_ms"),
            version=obj.get("version", __version__),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, CensusReport) and self.to_json() == other.to_json()


# -- stability -------------------------------------------------------------------


def perturb(f: BinaryForm, eps: Fraction, seed: int, denom: int = COEFF_DENOM) -> BinaryForm:
    """Add a seeded rational of magnitude <= eps to every monomial coefficient."""
    rng = random.Random(seed)
    return BinaryForm.from_monomial(
        [p + eps * Fraction(rng.randint(-denom, denom), denom) for p in f.monomial]
    )


def stability_probe(
    f: BinaryForm,
    certificate: RankCertificate,
    eps=Fraction(1, 2**16),
    probes: int = 20,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
) -> bool:
    """Re-classify ``probes`` perturbations of ``f`` and compare ranks.

    The reference rank is ``certificate.real_lo`` and the certificate must
    be exact.  A probe passes when the new result is that exact rank, or,
    for ``d >= 7`` where only brackets are available, a bracket containing it.
    """
    if not certificate.exact:
        raise ValueError("stability probes need an exact (or theorem-backed) rank")
    target = certificate.real_lo
    eps = Fraction(eps)
    for j in range(probes):
        g = perturb(f, eps, sample_seed(seed, j))
        if g.is_zero or not is_squarefree(g):
            return False
        cert = classify(g, trials, sample_seed(seed, j, 1))
        if not cert.contains(target):
            return False
        if not cert.exact and f.degree < 7:
            return False
    return True


# -- runs ------------------------------------------------------------------------


def classify_sample(f: BinaryForm, trials: int, seed: int) -> RankCertificate:
    return classify(f, trials, seed)


def _run_one(config: CensusConfig, index: int) -> SampleResult:
    seed = sample_seed(config.master_seed, index)
    labels = []
    attempt = 0
    while True:
        draw_seed = seed if attempt == 0 else sample_seed(config.master_seed, index, attempt)
        f = random_form(config.degree, config.distribution, draw_seed, config.denom)
        if not f.is_zero and is_squarefree(f):
            break
        labels.append(REJECTED)
        attempt += 1
        if not config.resample_on_reject or attempt > MAX_RESAMPLES:
            return SampleResult(index, seed, tuple(labels))
    cert = classify_sample(f, config.trials, seed)
    label = NONGENERIC if cert.stratum == "nongeneric" else cert.label
    labels.append(label)
    stable = None
    if config.stability_probes and cert.exact:
        stable = stability_probe(
            f, cert, Fraction(config.stability_eps), config.stability_probes, seed, config.trials
        )
    return SampleResult(index, seed, tuple(labels), stable)


def _run_chunk(config: CensusConfig, indices: Sequence[int]) -> List[SampleResult]:
    return [_run_one(config, i) for i in indices]


def fold(config: CensusConfig, results: Sequence[SampleResult]) -> CensusReport:
    counts: Counter = Counter()
    examples: Dict[str, List[dict]] = {}
    probed = stable = 0
    unstable: List[int] = []
    for res in sorted(results, key=lambda r: r.index):
        for lab in res.labels:
            counts[lab] += 1
        final = res.labels[-1]
        bucket = examples.setdefault(final, [])
        if len(bucket) < EXAMPLES_PER_LABEL:
            bucket.append({"index": res.index, "seed": res.seed})
        if res.stable is not None:
            probed += 1
            if res.stable:
                stable += 1
            else:
                unstable.append(res.index)
    stability = None
    if config.stability_probes:
        stability = {"probed": probed, "stable": stable, "unstable_indices": unstable}
    return CensusReport(config, dict(sorted(counts.items())), examples, stability)


def run_census(config: CensusConfig, jobs: int = 1, record_timing: bool = False) -> CensusReport:
    """Classify ``config.samples`` seeded forms; identical output for any ``jobs``.

    Wall time goes into the report only with ``record_timing`` so that
    reports stay byte-identical across runs.
    """
    start = time.perf_counter()
    indices = list(range(config.samples))
    if jobs <= 1:
        results = _run_chunk(config, indices)
    else:
        chunks = [indices[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_run_chunk, [config] * len(chunks), chunks)
            results = [r for part in parts for r in part]
    report = fold(config, results)
    if record_timing:
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


# -- persistence -------------------------------------------------------------------


def write_report(report: CensusReport, path, fmt: str = "json") -> None:
    if fmt == "json":
        text = report.dumps()
    elif fmt == "csv":
        text = _to_csv(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _to_csv(report: CensusReport) -> str:
    obj = report.to_json()
    buf = io.StringIO()
    for key in ("schema", "version", "config", "examples", "stability", "elapsed_ms"):
        buf.write(f"# {key}: {json.dumps(obj[key], sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["outcome", "count"])
    for label, n in obj["counts"].items():
        w.writerow([label, n])
    return buf.getvalue()


def read_report(path) -> CensusReport:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return CensusReport.from_json(json.loads(text))
    header = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            header[key] = json.loads(value)
        elif line.strip():
            body.append(line)
    rows = list(csv.reader(body))
    if not rows or rows[0] != ["outcome", "count"]:
        raise ValueError("CSV report is missing its outcome,count header")
    header["counts"] = {label: int(n) for label, n in rows[1:]}
    return CensusReport.from_json(header)
