__version__ = "0.3.0"

__all__ = ["analyze", "regenerate_appendix", "sweep", "verify_appendix", "verify_chain"]

from .api import analyze, regenerate_appendix, sweep, verify_appendix, verify_chain
