from __future__ import annotations
import argparse, json, sys
from typing import Any, Dict, Optional

from .api import analyze, regenerate_appendix, sweep, verify_appendix, verify_chain
from .core.config import RunConfig, build_config
from .core.errors import ConfigError, KasnerResonanceError
from .core.report import render_appendix, render_chain, render_sweep, render_verify, write_output

# 退出码定义
EXIT_OK = 0
EXIT_BLOCKED = 1
EXIT_INVALID_INPUT = 2


def _progress(cfg: RunConfig, message: str) -> None:
    if not cfg.quiet:
        print(message, file=sys.stderr)


def _error(exc: Exception) -> Dict[str, Any]:
    if isinstance(exc, KasnerResonanceError):
        error = exc.to_dict()
    else:
        error = {"type": "RuntimeError", "message": f"Unexpected error: {exc}", "details": {"error": str(exc)}}
    return {"status": "error", "exit_code": EXIT_INVALID_INPUT, "error": error}


def cmd_analyze(cfg: RunConfig) -> Dict[str, Any]:
    """分析单条链；可容许返回0，被阻断返回1"""
    if not cfg.word:
        return _error(ConfigError("analyze needs --cf WORD", {"word": cfg.word}))
    try:
        _progress(cfg, f"🔍 分析链 {cfg.word} (光滑度 {cfg.smoothness})...")
        result = analyze(cfg.word, cfg.smoothness, cfg.n_jobs)
    except KasnerResonanceError as e:
        return _error(e)

    report = result.report
    if report.admissible and report.orbit_admissible:
        _progress(cfg, f"✅ 可线性化: {result.base_point_count} 个基点全部满足")
        exit_code = EXIT_OK
    else:
        _progress(cfg, f"🚨 线性化受阻: {result.blocked_count} 个基点, "
                       f"{result.blocked_transient_count} 个过渡点")
        exit_code = EXIT_BLOCKED
    if result.common_factor_points:
        _progress(cfg, f"⚠️  公因子约化: {', '.join(result.common_factor_points)}")

    return {
        "status": "success",
        "exit_code": exit_code,
        "data": {"output": render_chain(report, cfg.format.value), **result.to_dict()},
    }


def cmd_appendix(cfg: RunConfig) -> Dict[str, Any]:
    """重建附录表格"""
    try:
        _progress(cfg, f"📄 重建附录 ({cfg.section.value})...")
        sections = regenerate_appendix(cfg.section.value, cfg.smoothness, cfg.n_jobs)
    except KasnerResonanceError as e:
        return _error(e)
    n_rows = sum(len(s.rows) for s in sections)
    _progress(cfg, f"✅ 共 {n_rows} 行")
    return {
        "status": "success",
        "exit_code": EXIT_OK,
        "data": {"output": render_appendix(sections, cfg.format.value), "rows": n_rows},
    }


def cmd_sweep(cfg: RunConfig) -> Dict[str, Any]:
    """按周期长度与项范围扫描"""
    try:
        _progress(cfg, f"🔄 扫描周期 {cfg.min_period}..{cfg.max_period}, "
                       f"项 {cfg.min_entry}..{cfg.max_entry}...")
        rows = sweep(cfg.min_period, cfg.max_period, cfg.min_entry, cfg.max_entry,
                     cfg.smoothness, cfg.admissible_only, cfg.n_jobs)
    except KasnerResonanceError as e:
        return _error(e)
    admissible = sum(1 for row in rows if row.admissible)
    _progress(cfg, f"✅ {len(rows)} 条链, {admissible} 条可容许")
    return {
        "status": "success",
        "exit_code": EXIT_OK,
        "data": {"output": render_sweep(rows, cfg.format.value), "chains": len(rows), "admissible": admissible},
    }


def cmd_verify(cfg: RunConfig) -> Dict[str, Any]:
    """精确恒等式 + 暴力最小性 + 闭式/递推一致性；任一失败返回1"""
    try:
        if cfg.word:
            _progress(cfg, f"🔍 校验链 {cfg.word} (搜索阶 ≤ {cfg.oracle_order})...")
            report = verify_chain(cfg.word, cfg.oracle_order, cfg.smoothness, cfg.n_jobs)
        else:
            _progress(cfg, f"🔍 校验附录 {cfg.section.value} (搜索阶 ≤ {cfg.oracle_order})...")
            report = verify_appendix(cfg.section.value, cfg.oracle_order, cfg.n_jobs)
    except KasnerResonanceError as e:
        return _error(e)

    output = render_verify(report, cfg.format.value)
    if report.passed:
        _progress(cfg, f"✅ {len(report.records)} 行全部通过")
        return {"status": "success", "exit_code": EXIT_OK,
                "data": {"output": output, "rows": len(report.records)}}
    first = report.first_failure
    _progress(cfg, f"🚨 {len(report.failures)} 行失败，首个: {first.label} {first.detail}")
    return {
        "status": "success",
        "exit_code": EXIT_BLOCKED,
        "data": {
            "output": output,
            "rows": len(report.records),
            "first_failure": {"label": first.label, "word": first.word, "checks": first.checks,
                              "detail": first.detail},
        },
    }


COMMANDS = {
    "analyze": cmd_analyze,
    "appendix": cmd_appendix,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def run(command: str, config_file: Optional[str] = None, **overrides: Any) -> Dict[str, Any]:
    """加载配置并执行子命令，不抛出异常"""
    try:
        cfg = build_config(config_file, command=command, **overrides)
    except KasnerResonanceError as e:
        return _error(e)
    try:
        return COMMANDS[cfg.command.value](cfg)
    except Exception as e:
        return _error(e)


def build_parser():
    p = argparse.ArgumentParser(
        prog="kasner-resonance",
        description="Takens-linearization admissibility for periodic Bianchi IX heteroclinic chains",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # 单条链
  kasner-resonance analyze --cf "2,3"
  kasner-resonance analyze --cf "5;3,2" --format json

  # 重建附录
  kasner-resonance appendix --section a1

  # 扫描
  kasner-resonance sweep --max-period 2 --min-entry 2 --max-entry 12 --admissible-only

  # 校验
  kasner-resonance verify --oracle-order 30
        """
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="Run configuration file (YAML)")
    common.add_argument("--format", type=str, choices=["text", "csv", "json"], default=None,
                        help="Output format (default: text)")
    common.add_argument("--smoothness", type=int, default=None,
                        help="Smoothness of the coordinate change (default: 1)")
    common.add_argument("--n-jobs", type=int, default=None, help="Number of parallel jobs (default: 1)")
    common.add_argument("--out", type=str, default=None, help="Write the rendered output to this file")
    common.add_argument("--quiet", action="store_true", default=None, help="Suppress progress lines")

    sub = p.add_subparsers(dest="cmd")
    analyze_p = sub.add_parser("analyze", parents=[common], help="Analyze one chain")
    analyze_p.add_argument("--cf", type=str, required=True,
                           help='Continued fraction word: "a,b,..." (periodic) or "m;a,b,..." (with head)')

    appendix_p = sub.add_parser("appendix", parents=[common], help="Regenerate the appendix tables")
    appendix_p.add_argument("--section", type=str, choices=["a1", "a2", "a3", "a4", "all"], default=None)

    sweep_p = sub.add_parser("sweep", parents=[common], help="Sweep periodic chains")
    sweep_p.add_argument("--min-period", type=int, default=None)
    sweep_p.add_argument("--max-period", type=int, default=None)
    sweep_p.add_argument("--min-entry", type=int, default=None)
    sweep_p.add_argument("--max-entry", type=int, default=None)
    sweep_p.add_argument("--admissible-only", action="store_true", default=None)

    verify_p = sub.add_parser("verify", parents=[common], help="Verify resonances against a brute-force oracle")
    verify_p.add_argument("--oracle-order", type=int, default=None,
                          help="Largest resonance order searched (default: 30)")
    verify_p.add_argument("--section", type=str, choices=["a1", "a2", "a3", "a4", "all"], default=None)
    verify_p.add_argument("--cf", type=str, default=None, help="Verify one chain instead of the appendix")
    return p


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    names = {
        "format": "format", "smoothness": "smoothness", "n_jobs": "n_jobs", "quiet": "quiet",
        "cf": "word", "section": "section", "min_period": "min_period", "max_period": "max_period",
        "min_entry": "min_entry", "max_entry": "max_entry", "admissible_only": "admissible_only",
        "oracle_order": "oracle_order",
    }
    return {target: getattr(args, source) for source, target in names.items() if hasattr(args, source)}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cmd is None:
        parser.print_help()
        sys.exit(EXIT_INVALID_INPUT)

    result = run(args.cmd, args.config, **_overrides(args))
    if result["status"] == "success":
        output = result["data"]["output"]
        if args.out:
            write_output(output, args.out)
        else:
            sys.stdout.write(output if output.endswith("\n") else output + "\n")
    else:
        print(json.dumps(result, ensure_ascii=False, indent=2))
    sys.exit(result["exit_code"])


if __name__ == "__main__":
    main()
