from __future__ import annotations
import os
import re
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import pandas as pd
import yaml
from jinja2 import Environment, FileSystemLoader, select_autoescape

from .cfrac import FAMILY_BY_PERIOD, CFWord, cf_value, closed_form_coeffs
from .errors import ConfigError
from .kasner import eigenvalues
from .parallel import parallel_map
from .resonance import CLOSED_FORM_SIGN, k_from_c
from .snc import alpha_beta

Triple = Tuple[int, int, int]

CATALOGUE_PATH = os.path.join(os.path.dirname(__file__), "..", "data", "appendix.yaml")
TEMPLATE_PATH = os.path.join(os.path.dirname(__file__), "..", "templates")
SECTION_KEYS = ("a1", "a2", "a3", "a4")

ROW_PATTERN = re.compile(
    r"m=\s*(-?\d+)\s+alpha=\s*(-?\d+)\s+beta=\s*(-?\d+)\s+"
    r"k1=\s*(-?\d+)\s+k2=\s*(-?\d+)\s+k3=\s*(-?\d+)"
)


@dataclass(frozen=True)
class AppendixRow:
    """附录表格的一行：闭式系数 + 族符号得到的未约化 k"""
    section: str
    header: str
    m: int
    word: str
    family: str
    c: Triple
    k: Triple
    alpha: int
    beta: int

    @property
    def cf_word(self) -> CFWord:
        return CFWord.parse(self.word)

    @property
    def values(self) -> Tuple[int, int, int, int, int, int]:
        return (self.m, self.alpha, self.beta) + self.k


@dataclass
class AppendixBlock:
    header: str
    period: Tuple[int, ...]
    m_max: int
    rows: List[AppendixRow] = field(default_factory=list)


@dataclass
class AppendixGroup:
    params: Dict[str, int]
    intro: Optional[str]
    blocks: List[AppendixBlock]


@dataclass
class AppendixSection:
    key: str
    title: str
    groups: List[AppendixGroup]

    @property
    def rows(self) -> List[AppendixRow]:
        return [row for group in self.groups for block in group.blocks for row in block.rows]


def load_catalogue(path: Optional[str] = None) -> List[Dict[str, Any]]:
    path = path or CATALOGUE_PATH
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)
    return data["sections"]


def appendix_row(section: str, header: str, period: Sequence[int], m: int,
                 smoothness: int = 1) -> AppendixRow:
    """按闭式公式计算一行；首项可超出基点范围（预周期块）"""
    period = tuple(period)
    family = FAMILY_BY_PERIOD[len(period)]
    c = closed_form_coeffs(family, m, period, allow_preperiodic=True)
    k = k_from_c(c, CLOSED_FORM_SIGN[family])
    word = CFWord((m,), period)
    alpha, beta = alpha_beta(eigenvalues(cf_value(word)), smoothness)
    return AppendixRow(
        section=section, header=header, m=m, word=str(word), family=family.value,
        c=c.as_tuple(), k=k.as_tuple(), alpha=alpha, beta=beta,
    )


def _resolve(value: Any, params: Dict[str, int]) -> int:
    if isinstance(value, str):
        if value not in params:
            raise ConfigError(f"unknown appendix parameter {value!r}", {"params": params})
        return int(params[value])
    return int(value)


def _select(section: str) -> List[Dict[str, Any]]:
    catalogue = load_catalogue()
    if section == "all":
        return catalogue
    chosen = [s for s in catalogue if s["key"] == section]
    if not chosen:
        raise ConfigError(f"unknown appendix section {section!r}", {"available": list(SECTION_KEYS)})
    return chosen


def build_sections(section: str = "all", smoothness: int = 1, n_jobs: int = 1) -> List[AppendixSection]:
    """重建附录各块；行顺序与线程数无关"""
    sections: List[AppendixSection] = []
    tasks: List[Tuple[AppendixBlock, str, int]] = []
    for spec in _select(section):
        groups: List[AppendixGroup] = []
        for group_spec in spec["groups"]:
            params = dict(group_spec["params"])
            blocks: List[AppendixBlock] = []
            for block_spec in group_spec["blocks"]:
                period = tuple(_resolve(x, params) for x in block_spec["period"])
                m_max = _resolve(block_spec.get("m_max", period[-1]), params)
                block = AppendixBlock(block_spec["header"].format(**params), period, m_max)
                blocks.append(block)
                tasks.extend((block, spec["key"], m) for m in range(1, m_max + 1))
            intro = group_spec.get("intro")
            groups.append(AppendixGroup(params, intro.format(**params) if intro else None, blocks))
        sections.append(AppendixSection(spec["key"], spec["title"], groups))

    def compute(task: Tuple[AppendixBlock, str, int]) -> AppendixRow:
        block, key, m = task
        return appendix_row(key, block.header, block.period, m, smoothness)

    rows = parallel_map(compute, tasks, n_jobs=n_jobs)
    for (block, _, _), row in zip(tasks, rows):
        block.rows.append(row)
    return sections


def iter_rows(sections: Sequence[AppendixSection]) -> Iterator[AppendixRow]:
    for section in sections:
        yield from section.rows


def render_appendix_text(sections: Sequence[AppendixSection]) -> str:
    env = Environment(loader=FileSystemLoader(searchpath=TEMPLATE_PATH),
                      autoescape=select_autoescape(), trim_blocks=True, lstrip_blocks=True)
    tpl = env.get_template("appendix.txt.j2")
    return tpl.render(sections=sections)


def rows_frame(sections: Sequence[AppendixSection]) -> pd.DataFrame:
    """扁平化为表格（三元组拆成单独列）"""
    records = []
    for row in iter_rows(sections):
        record = asdict(row)
        c, k = record.pop("c"), record.pop("k")
        record.update({"c1": c[0], "c2": c[1], "c3": c[2], "k1": k[0], "k2": k[1], "k3": k[2]})
        records.append(record)
    columns = ["section", "header", "m", "word", "family", "alpha", "beta",
               "k1", "k2", "k3", "c1", "c2", "c3"]
    return pd.DataFrame.from_records(records, columns=columns)


def parse_rows(text: str) -> List[Tuple[int, int, int, int, int, int]]:
    """从表格文本中提取 (m, alpha, beta, k1, k2, k3)"""
    return [tuple(int(x) for x in match.groups()) for match in ROW_PATTERN.finditer(text)]


def normalize_lines(text: str) -> List[str]:
    """单空格化并去掉空行"""
    lines = (" ".join(line.split()) for line in text.splitlines())
    return [line for line in lines if line]
