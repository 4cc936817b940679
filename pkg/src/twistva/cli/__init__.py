from .main import main
from .parser import ParseError, parse_expr

__all__ = ["main", "parse_expr", "ParseError"]
