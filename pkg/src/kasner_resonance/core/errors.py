from __future__ import annotations
from typing import Any, Dict, Optional


class KasnerResonanceError(Exception):
    """所有库内异常的基类"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """转换为CLI错误输出结构"""
        return {
            "type": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


class ZeroLeadingCoefficient(KasnerResonanceError, ValueError):
    """二次方程首项系数为零"""


class NegativeDiscriminant(KasnerResonanceError, ValueError):
    """判别式为负，无实根"""


class DivisionByZero(KasnerResonanceError, ZeroDivisionError):
    """二次域元素除以零"""


class RadicandMismatch(KasnerResonanceError, ValueError):
    """两个二次域元素不在同一个域中"""


class InvalidWord(KasnerResonanceError, ValueError):
    """连分数词不合法（空周期或非正项）"""


class WordParseError(InvalidWord):
    """连分数文本语法错误"""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(
            f"{message} (position {position})",
            {"text": text, "position": position},
        )
        self.text = text
        self.position = position


class HeadOutOfRange(KasnerResonanceError, ValueError):
    """闭式公式的首项 m 超出基点范围"""


class TaubPoint(KasnerResonanceError, ValueError):
    """Taub点 u = 1：特征值退化"""


class TaubDegeneracy(KasnerResonanceError, ValueError):
    """特征值模长相等，无法排序"""


class ConfigError(KasnerResonanceError, ValueError):
    """运行配置不合法"""
