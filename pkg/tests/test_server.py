from __future__ import annotations

import json
import socket
import threading

import pytest

from geokb.client import client_query, save_codes
from geokb.cli import client_main, server_main
from geokb.errors import TransportError
from geokb.model import parse_construction
from geokb.protocol import (
    ErrorResponse,
    InsertResult,
    QueryRequest,
    QueryResult,
    decode_response,
)
from geokb.repository import ProblemEntry
from geokb.server import GeoServer, handle_request

from generators import BARE_TRIANGLE_TEXT, TRIANGLE_WITH_CIRCLE_TEXT


@pytest.fixture()
def server(fresh_seeded_repo):
    srv = GeoServer(fresh_seeded_repo, host="127.0.0.1", port=0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield srv
    srv.shutdown()
    srv.close()
    thread.join(timeout=5)


def raw_exchange(server: GeoServer, payload: bytes) -> bytes:
    with socket.create_connection((server.host, server.port), timeout=5) as sock:
        sock.sendall(payload)
        data = bytearray()
        while b"\n" not in data:
            chunk = sock.recv(65536)
            if not chunk:
                break
            data.extend(chunk)
    return bytes(data)


# -- dispatch unit tests -------------------------------------------------------


def test_handle_request_text_query(fresh_seeded_repo):
    response = handle_request(fresh_seeded_repo, b'{"Query": "ceva"}\n')
    assert isinstance(response, QueryResult)
    assert [identifier for identifier, _ in response.entries] == ["GEO_CEVA"]
    info = response.entries[0][1]
    assert info.name == "Ceva's Theorem"
    assert parse_construction(info.code)


def test_handle_request_unknown_filter_key(fresh_seeded_repo):
    response = handle_request(fresh_seeded_repo, b'{"Query": "x", "Filters": "colour=blue"}\n')
    assert isinstance(response, ErrorResponse)
    assert "unknown filter key: colour" in response.error


def test_handle_request_bad_geometric_code(fresh_seeded_repo):
    response = handle_request(
        fresh_seeded_repo, b'{"GeometricQuery": "parallel(a, a)\\nline a"}\n'
    )
    assert isinstance(response, ErrorResponse)
    assert "repeated argument" in response.error


def test_handle_request_invalid_pattern(fresh_seeded_repo):
    response = handle_request(fresh_seeded_repo, b'{"Query": "(unclosed"}\n')
    assert isinstance(response, ErrorResponse)
    assert "invalid pattern" in response.error


def test_handle_request_insert_duplicate_then_forced(fresh_seeded_repo):
    draft = json.dumps(
        {"Name": "Triangle again", "Code": BARE_TRIANGLE_TEXT, "Kind": "construction"}
    )
    blocked = handle_request(fresh_seeded_repo, f'{{"Insert": {draft}}}\n'.encode())
    assert isinstance(blocked, InsertResult)
    assert blocked.status == "duplicate"
    assert blocked.identifier is None
    assert "GEO0281" in blocked.duplicates.containing_entries
    forced = handle_request(
        fresh_seeded_repo, f'{{"Insert": {draft}, "Force": true}}\n'.encode()
    )
    assert isinstance(forced, InsertResult)
    assert forced.status == "inserted"
    assert forced.identifier == "GEO0023"


# -- wire round trips -----------------------------------------------------------


def test_wire_text_query(server):
    response = client_query(server.host, server.port, QueryRequest(query="ceva"))
    assert isinstance(response, QueryResult)
    assert [identifier for identifier, _ in response.entries] == ["GEO_CEVA"]


def test_wire_geometric_query_candidates(server, fresh_seeded_repo):
    request = QueryRequest(geometric=BARE_TRIANGLE_TEXT, confirm=False)
    response = client_query(server.host, server.port, request)
    expected = [
        identifier
        for identifier, _ in fresh_seeded_repo.geometric_query(
            parse_construction(BARE_TRIANGLE_TEXT), confirm=False
        )
    ]
    assert [identifier for identifier, _ in response.entries] == expected


def test_wire_filtered_geometric_query(server):
    request = QueryRequest(
        geometric=TRIANGLE_WITH_CIRCLE_TEXT, filters="kind=conjecture", confirm=True
    )
    response = client_query(server.host, server.port, request)
    identifiers = [identifier for identifier, _ in response.entries]
    assert identifiers == ["GEO0003", "GEO0017", "GEO0019", "GEO0281", "GEO0328"]


def test_wire_insert_flow(server):
    draft = ProblemEntry(name="Fresh point", code="point A\n", kind="construction", level=1)
    response = client_query(
        server.host, server.port, QueryRequest(insert=draft, force=True)
    )
    assert isinstance(response, InsertResult)
    assert response.status == "inserted"
    follow_up = client_query(server.host, server.port, QueryRequest(query="fresh point"))
    assert isinstance(follow_up, QueryResult)
    assert [identifier for identifier, _ in follow_up.entries] == [response.identifier]


def test_malformed_request_gets_error_response_and_liveness(server):
    answer = raw_exchange(server, b"this is not json\n")
    response = decode_response(answer)
    assert isinstance(response, ErrorResponse)
    assert "malformed JSON" in response.error
    # the next, valid request on a new connection still works
    ok = client_query(server.host, server.port, QueryRequest(query="ceva"))
    assert isinstance(ok, QueryResult)


def test_sequential_requests_each_get_a_response(server):
    for _ in range(12):
        response = client_query(server.host, server.port, QueryRequest(query="ceva"))
        assert isinstance(response, QueryResult)


def test_concurrent_clients(server):
    results: list[object] = []
    errors: list[Exception] = []

    def worker():
        try:
            results.append(client_query(server.host, server.port, QueryRequest(query="ceva")))
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert errors == []
    assert len(results) == 8


def test_connection_refused_raises_transport_error():
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        free_port = probe.getsockname()[1]
    with pytest.raises(TransportError):
        client_query("127.0.0.1", free_port, QueryRequest(query="x"), timeout=2)


def test_server_closing_without_response_raises_transport_error():
    class Quiet(threading.Thread):
        def __init__(self):
            super().__init__(daemon=True)
            self.sock = socket.socket()
            self.sock.bind(("127.0.0.1", 0))
            self.sock.listen(1)
            self.port = self.sock.getsockname()[1]

        def run(self):
            conn, _ = self.sock.accept()
            conn.close()
            self.sock.close()

    quiet = Quiet()
    quiet.start()
    with pytest.raises(TransportError, match="without a response"):
        client_query("127.0.0.1", quiet.port, QueryRequest(query="x"), timeout=2)


# -- command line ------------------------------------------------------------------


def test_geoclient_text_query_exit_0(server, capsys):
    code = client_main([server.host, str(server.port), "ceva"])
    assert code == 0
    printed = json.loads(capsys.readouterr().out)
    assert list(printed) == ["GEO_CEVA"]
    assert printed["GEO_CEVA"]["Name"] == "Ceva's Theorem"


def test_geoclient_filtered_and_extended(server, capsys):
    code = client_main(
        [server.host, str(server.port), "circle", "--mode", "extended", "--filters", "level=3"]
    )
    assert code == 0
    printed = json.loads(capsys.readouterr().out)
    assert "GEO0328" in printed


def test_geoclient_geometric_file(server, tmp_path, capsys):
    query_file = tmp_path / "triangle.cons"
    query_file.write_text(BARE_TRIANGLE_TEXT, encoding="utf-8")
    out_dir = tmp_path / "saved"
    code = client_main(
        [
            server.host,
            str(server.port),
            "--geometric",
            str(query_file),
            "--no-confirm",
            "--out",
            str(out_dir),
        ]
    )
    assert code == 0
    printed = json.loads(capsys.readouterr().out)
    assert "GEO_CEVA" in printed
    saved = sorted(p.name for p in out_dir.iterdir())
    assert "GEO_CEVA.cons" in saved
    assert parse_construction((out_dir / "GEO_CEVA.cons").read_text(encoding="utf-8"))


def test_geoclient_insert_file(server, tmp_path, capsys):
    draft_file = tmp_path / "draft.json"
    draft_file.write_text(
        json.dumps({"Name": "Bare triangle", "Code": BARE_TRIANGLE_TEXT}),
        encoding="utf-8",
    )
    code = client_main([server.host, str(server.port), "--insert", str(draft_file)])
    assert code == 0
    printed = json.loads(capsys.readouterr().out)
    assert printed["Status"] == "duplicate"
    code = client_main(
        [server.host, str(server.port), "--insert", str(draft_file), "--force"]
    )
    assert code == 0
    printed = json.loads(capsys.readouterr().out)
    assert printed["Status"] == "inserted"


def test_geoclient_server_error_exit_2(server, capsys):
    code = client_main([server.host, str(server.port), "(unclosed"])
    assert code == 2
    assert "server error" in capsys.readouterr().err


def test_geoclient_transport_error_exit_1(capsys):
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        free_port = probe.getsockname()[1]
    code = client_main(["127.0.0.1", str(free_port), "ceva", "--timeout", "2"])
    assert code == 1
    assert "geoclient:" in capsys.readouterr().err


def test_geoclient_usage_errors(server):
    with pytest.raises(SystemExit):
        client_main([server.host, str(server.port)])  # no query at all
    with pytest.raises(SystemExit):
        client_main([server.host, str(server.port), "q", "--force"])


def test_geoserver_bind_failure_exit_1(tmp_path, capsys):
    blocker = socket.socket()
    blocker.bind(("127.0.0.1", 0))
    port = blocker.getsockname()[1]
    try:
        code = server_main(
            ["--host", "127.0.0.1", "--port", str(port), "--data", str(tmp_path / "d")]
        )
    finally:
        blocker.close()
    assert code == 1
    assert "geoserver:" in capsys.readouterr().err


def test_save_codes_writes_every_entry(tmp_path, fresh_seeded_repo, server):
    response = client_query(server.host, server.port, QueryRequest(query=".*"))
    assert isinstance(response, QueryResult)
    written = save_codes(response, tmp_path / "codes")
    assert len(written) == len(fresh_seeded_repo.list_all())
    for path in written:
        assert parse_construction(path.read_text(encoding="utf-8")) is not None
