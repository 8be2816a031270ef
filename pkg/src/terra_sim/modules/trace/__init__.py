from .errors import TraceParseError
from .models import RssTrace
from .service import export_trace, parse_trace, replay

__all__ = ["RssTrace", "TraceParseError", "export_trace", "parse_trace", "replay"]
