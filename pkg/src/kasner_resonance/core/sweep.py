from __future__ import annotations
import warnings
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Iterator, List, Optional, Tuple

import pandas as pd

from .cfrac import minimal_period
from .parallel import ParallelProcessor
from .snc import ChainReport, chain_verdict


@dataclass
class SweepRow:
    """单条周期词的扫描结果"""
    period: str
    length: int
    entry_sum: int
    admissible: bool
    blocking_points: List[str] = field(default_factory=list)
    gcd_anomalies: List[str] = field(default_factory=list)
    two_periodic_admissible: Optional[bool] = None
    min_order: int = 0


def necklaces(length: int, min_entry: int, max_entry: int) -> Iterator[Tuple[int, ...]]:
    """每个轮换类取字典序最小的代表，且最小周期恰为 length"""
    entries = range(min_entry, max_entry + 1)
    for word in product(entries, repeat=length):
        if minimal_period(word) != word:
            continue
        if any(word[i:] + word[:i] < word for i in range(1, length)):
            continue
        yield word


def sweep_row(report: ChainReport) -> SweepRow:
    anomalies = [r.word for r in report.base_points if r.gcd > 1]
    if anomalies:
        warnings.warn(f"common factor reduced in chain {report.word}: {', '.join(anomalies)}")
    return SweepRow(
        period=",".join(str(x) for x in report.period),
        length=len(report.period),
        entry_sum=sum(report.period),
        admissible=report.admissible,
        blocking_points=[r.word for r in report.blocking_points],
        gcd_anomalies=anomalies,
        two_periodic_admissible=report.two_periodic_admissible,
        min_order=min(r.order for r in report.base_points),
    )


def sweep_chains(min_period: int = 1, max_period: int = 3, min_entry: int = 1, max_entry: int = 5,
                 smoothness: int = 1, admissible_only: bool = False, n_jobs: int = 1) -> List[SweepRow]:
    """按 (长度, 字典序) 的确定顺序扫描全部周期链"""
    words = [w for length in range(min_period, max_period + 1)
             for w in necklaces(length, min_entry, max_entry)]
    processor = ParallelProcessor(n_jobs=n_jobs)
    reports = processor.map_ordered(lambda w: chain_verdict(w, smoothness), words)
    rows = [sweep_row(report) for report in reports]
    if admissible_only:
        rows = [row for row in rows if row.admissible]
    return rows


def sweep_frame(rows: List[SweepRow]) -> pd.DataFrame:
    records = []
    for row in rows:
        record = asdict(row)
        record["blocking_points"] = " ".join(row.blocking_points)
        record["gcd_anomalies"] = " ".join(row.gcd_anomalies)
        records.append(record)
    columns = ["period", "length", "entry_sum", "admissible", "blocking_points",
               "gcd_anomalies", "two_periodic_admissible", "min_order"]
    return pd.DataFrame.from_records(records, columns=columns)
