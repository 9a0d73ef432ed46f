"""Session files, certificate files and the command line."""

from .certfile import format_certificate, verify_certificate_file, verify_certificate_text, write_certificate
from .document import SessionDocument, parse_session, serialize_session
from .runner import Report, run_pipeline

__all__ = ["SessionDocument", "parse_session", "serialize_session", "run_pipeline", "Report",
           "format_certificate", "write_certificate", "verify_certificate_file",
           "verify_certificate_text"]
