import time

import pytest

from kasner_resonance.api import sweep, verify_appendix
from kasner_resonance.core.appendix import build_sections, render_appendix_text
from kasner_resonance.core.parallel import ParallelProcessor


@pytest.mark.perf
class TestPerformanceAppendix:
    """附录重建与暴力校验的耗时"""

    def test_full_appendix(self):
        start = time.perf_counter()
        text = render_appendix_text(build_sections("all"))
        elapsed = time.perf_counter() - start
        print(f"附录重建: {elapsed:.3f}s")
        assert elapsed < 5.0
        assert text.count("alpha=") == 99

    def test_oracle_parallel_speed(self):
        """并行与顺序结果一致，并行不应明显更慢"""
        start = time.perf_counter()
        sequential = verify_appendix("all", oracle_order=30, n_jobs=1)
        t_seq = time.perf_counter() - start

        start = time.perf_counter()
        parallel = verify_appendix("all", oracle_order=30, n_jobs=-1)
        t_par = time.perf_counter() - start

        print(f"顺序: {t_seq:.2f}s, 并行: {t_par:.2f}s")
        assert sequential.records == parallel.records
        assert t_par < t_seq * 2 + 1.0

    def test_two_periodic_sweep(self):
        start = time.perf_counter()
        rows = sweep(2, 2, 1, 20)
        elapsed = time.perf_counter() - start
        print(f"扫描 {len(rows)} 条链: {elapsed:.2f}s")
        assert len(rows) == 190
        assert elapsed < 60.0

    def test_system_info(self):
        info = ParallelProcessor(n_jobs=-1).get_system_info()
        assert info["cpu_count"] >= 1
        assert info["n_jobs"] >= 1
