from __future__ import annotations
import multiprocessing as mp
import warnings
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Sequence

import psutil

from .errors import KasnerResonanceError

try:
    from joblib import Parallel, delayed
    JOBLIB_AVAILABLE = True
except ImportError:
    JOBLIB_AVAILABLE = False


class ParallelProcessor:
    """并行处理器：结果顺序始终与输入顺序一致"""

    def __init__(self, n_jobs: int = -1, backend: str = "threading", timeout: int = 300):
        self.n_jobs = n_jobs if n_jobs > 0 else mp.cpu_count()
        self.backend = backend
        self.timeout = timeout
        self.n_jobs = min(self.n_jobs, self._get_optimal_jobs())

    def _get_optimal_jobs(self) -> int:
        """根据物理核数与可用内存限制并行数"""
        cores = psutil.cpu_count(logical=False) or mp.cpu_count()
        available_gb = psutil.virtual_memory().available / (1024 ** 3)
        # 大整数收敛子表每个任务约占 256MB 上限
        memory_based_jobs = max(1, int(available_gb * 4))
        return max(1, min(cores, memory_based_jobs, 8))

    def map_ordered(self, func: Callable[[Any], Any], items: Sequence[Any]) -> List[Any]:
        """并行映射，按输入顺序返回"""
        items = list(items)
        if len(items) <= 1 or self.n_jobs == 1:
            return [func(item) for item in items]
        if JOBLIB_AVAILABLE and self.backend in ("loky", "threading"):
            return self._joblib_map(func, items)
        return self._thread_map(func, items)

    def _joblib_map(self, func: Callable[[Any], Any], items: List[Any]) -> List[Any]:
        try:
            return Parallel(n_jobs=self.n_jobs, backend=self.backend, timeout=self.timeout)(
                delayed(func)(item) for item in items
            )
        except KasnerResonanceError:
            raise
        except Exception as e:
            warnings.warn(f"Joblib parallel failed: {e}, falling back to sequential")
            return [func(item) for item in items]

    def _thread_map(self, func: Callable[[Any], Any], items: List[Any]) -> List[Any]:
        try:
            with ThreadPoolExecutor(max_workers=self.n_jobs) as executor:
                return list(executor.map(func, items))
        except KasnerResonanceError:
            raise
        except Exception as e:
            warnings.warn(f"Concurrent parallel failed: {e}, falling back to sequential")
            return [func(item) for item in items]

    def get_system_info(self) -> Dict[str, Any]:
        return {
            "cpu_count": mp.cpu_count(),
            "n_jobs": self.n_jobs,
            "backend": self.backend,
            "joblib_available": JOBLIB_AVAILABLE,
            "memory_usage_percent": psutil.virtual_memory().percent,
        }


def parallel_map(func: Callable[[Any], Any], items: Sequence[Any], n_jobs: int = 1,
                 backend: str = "threading") -> List[Any]:
    """并行映射的便捷函数"""
    return ParallelProcessor(n_jobs=n_jobs, backend=backend).map_ordered(func, items)
