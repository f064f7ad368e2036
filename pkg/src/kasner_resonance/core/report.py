from __future__ import annotations
import json
import os
from dataclasses import asdict
from io import StringIO
from typing import Any, Dict, List, Sequence

import pandas as pd
from jinja2 import Environment, FileSystemLoader, select_autoescape

from .appendix import AppendixSection, render_appendix_text, rows_frame
from .snc import BasePointReport, ChainReport
from .sweep import SweepRow, sweep_frame
from .verify import CHECKS, VerifyReport

FORMATS = ("text", "csv", "json")
TRIPLE_FIELDS = ("c_raw", "c_reduced", "k_raw", "k_reduced")


def _env() -> Environment:
    template_path = os.path.join(os.path.dirname(__file__), "..", "templates")
    return Environment(loader=FileSystemLoader(searchpath=template_path),
                       autoescape=select_autoescape(), trim_blocks=True, lstrip_blocks=True)


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"unknown output format {fmt!r}, expected one of {FORMATS}")


def _point_record(r: BasePointReport, transient: bool) -> Dict[str, Any]:
    """JSON字段顺序，三元组拆成 _1/_2/_3 列"""
    record: Dict[str, Any] = {}
    for name, value in r.model_dump(mode="json").items():
        if name in TRIPLE_FIELDS:
            for i, x in enumerate(value, start=1):
                record[f"{name}_{i}"] = x
        else:
            record[name] = value
    record["transient"] = transient
    return record


def chain_frame(report: ChainReport) -> pd.DataFrame:
    records = [_point_record(r, False) for r in report.base_points]
    records += [_point_record(r, True) for r in report.transient_points]
    return pd.DataFrame.from_records(records)


def render_chain(report: ChainReport, fmt: str = "text") -> str:
    _check_format(fmt)
    if fmt == "json":
        return report.model_dump_json(indent=2)
    if fmt == "csv":
        return chain_frame(report).to_csv(index=False)
    return _env().get_template("chain.txt.j2").render(report=report)


def parse_chain_json(text: str) -> ChainReport:
    return ChainReport.model_validate_json(text)


def parse_chain_csv(text: str) -> List[Dict[str, Any]]:
    """CSV 读回为逐基点字典（三元组重新合并）"""
    df = pd.read_csv(StringIO(text))
    points = []
    for record in df.to_dict(orient="records"):
        for name in TRIPLE_FIELDS:
            record[name] = tuple(int(record.pop(f"{name}_{i}")) for i in (1, 2, 3))
        points.append(record)
    return points


def render_appendix(sections: Sequence[AppendixSection], fmt: str = "text") -> str:
    _check_format(fmt)
    if fmt == "json":
        payload = [
            {"key": s.key, "title": s.title, "rows": [asdict(row) for row in s.rows]}
            for s in sections
        ]
        return json.dumps(payload, ensure_ascii=False, indent=2)
    if fmt == "csv":
        return rows_frame(sections).to_csv(index=False)
    return render_appendix_text(sections)


def render_sweep(rows: List[SweepRow], fmt: str = "text") -> str:
    _check_format(fmt)
    if fmt == "json":
        return json.dumps([asdict(row) for row in rows], ensure_ascii=False, indent=2)
    if fmt == "csv":
        return sweep_frame(rows).to_csv(index=False)
    return _env().get_template("sweep.txt.j2").render(rows=rows)


def verify_frame(report: VerifyReport) -> pd.DataFrame:
    records = []
    for r in report.records:
        record = {"label": r.label, "word": r.word, "order": r.order, "passed": r.passed}
        record.update({f"k{i}": x for i, x in enumerate(r.k_reduced, start=1)})
        record.update({name: r.checks.get(name) for name in CHECKS})
        record["detail"] = r.detail
        records.append(record)
    return pd.DataFrame.from_records(records)


def render_verify(report: VerifyReport, fmt: str = "text") -> str:
    _check_format(fmt)
    if fmt == "json":
        payload = {
            "oracle_order": report.oracle_order,
            "passed": report.passed,
            "records": [dict(asdict(r), passed=r.passed) for r in report.records],
        }
        return json.dumps(payload, ensure_ascii=False, indent=2)
    if fmt == "csv":
        return verify_frame(report).to_csv(index=False)
    return _env().get_template("verify.txt.j2").render(report=report)


def write_output(text: str, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return path
