"""TCP server: one JSON request per connection, one JSON response back.

The server listens on a socket in an infinite cycle.  Each connection
carries a single newline-terminated request; the server dispatches it to
the repository, writes a single newline-terminated response and closes the
connection.  Per-request failures of any sort produce an ``Error``
response rather than a dropped connection, so one bad client request never
poisons the next one.
"""

from __future__ import annotations

import logging
import socketserver
from pathlib import Path
from typing import NoReturn

from .errors import GeoKbError
from .model import parse_construction
from .protocol import (
    EntryInfo,
    ErrorResponse,
    InsertResult,
    QueryRequest,
    QueryResponse,
    QueryResult,
    decode_request,
    encode_response,
)
from .repository import DuplicateReport, EMPTY_FILTERS, Repository, parse_filters
from .rules import load_rules

log = logging.getLogger(__name__)

DEFAULT_HOST = "0.0.0.0"
DEFAULT_PORT = 7890
MAX_REQUEST_BYTES = 4 * 1024 * 1024
CONNECTION_TIMEOUT = 30.0


def _entry_map(repository: Repository, identifiers: list[str]) -> QueryResult:
    entries = []
    for identifier in identifiers:
        entry = repository.get(identifier)
        entries.append(
            (identifier, EntryInfo(entry.name, entry.description, entry.code))
        )
    return QueryResult(tuple(entries))


def handle_request(repository: Repository, data: bytes) -> QueryResponse:
    """Decode, dispatch and answer one request; never raises."""
    try:
        request = decode_request(data)
        filters = parse_filters(request.filters) if request.filters else EMPTY_FILTERS
        if request.query is not None:
            identifiers = repository.text_query(request.query, mode=request.mode, filters=filters)
            return _entry_map(repository, identifiers)
        if request.geometric is not None:
            construction = parse_construction(request.geometric)
            matches = repository.geometric_query(
                construction, filters=filters, confirm=request.confirm
            )
            return _entry_map(repository, [identifier for identifier, _ in matches])
        outcome = repository.insert(request.insert, force=request.force)
        if isinstance(outcome, DuplicateReport):
            return InsertResult("duplicate", None, outcome)
        return InsertResult("inserted", outcome, DuplicateReport())
    except GeoKbError as exc:
        return ErrorResponse(str(exc))
    except Exception as exc:  # noqa: BLE001 - the server must keep serving
        log.exception("unexpected failure while handling a request")
        return ErrorResponse(f"internal error: {exc}")


class _Handler(socketserver.StreamRequestHandler):
    def handle(self) -> None:
        self.connection.settimeout(CONNECTION_TIMEOUT)
        try:
            data = self.rfile.readline(MAX_REQUEST_BYTES + 1)
        except OSError:
            return
        if not data:
            return
        if len(data) > MAX_REQUEST_BYTES:
            response: QueryResponse = ErrorResponse("request too large")
        else:
            response = handle_request(self.server.repository, data)  # type: ignore[attr-defined]
        try:
            self.wfile.write(encode_response(response))
        except OSError:
            log.warning("client went away before the response was written")


class _TcpServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True


class GeoServer:
    """A bound server; call :meth:`serve_forever` to start answering."""

    def __init__(self, repository: Repository, host: str = DEFAULT_HOST, port: int = DEFAULT_PORT):
        self._server = _TcpServer((host, port), _Handler)
        self._server.repository = repository  # type: ignore[attr-defined]

    @property
    def host(self) -> str:
        return self._server.server_address[0]

    @property
    def port(self) -> int:
        return self._server.server_address[1]

    def serve_forever(self) -> None:
        log.info("listening on %s:%d", self.host, self.port)
        self._server.serve_forever()

    def shutdown(self) -> None:
        self._server.shutdown()

    def close(self) -> None:
        self._server.server_close()

    def __enter__(self) -> "GeoServer":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.shutdown()
        self.close()


def serve(
    host: str,
    port: int,
    data_dir: str,
    rules_path: str | None = None,
    gtd_depth: int = 2,
) -> NoReturn:
    """Build the repository and answer requests until the process is
    signalled.  Binding failures propagate as ``OSError``."""
    ruleset = load_rules(Path(rules_path).read_text(encoding="utf-8")) if rules_path else None
    repository = Repository(data_dir, ruleset=ruleset, gtd_depth=gtd_depth)
    log.info("serving %d entries from %s", len(repository), repository.data_dir)
    server = GeoServer(repository, host, port)
    server.serve_forever()
    raise AssertionError("serve_forever returned")  # pragma: no cover
