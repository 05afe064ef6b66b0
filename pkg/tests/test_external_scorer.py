"""External scorer wire contract: /score POST, timeouts, fallback."""

from __future__ import annotations

import json
import socket
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from xlit.errors import MalformedResponse, ScorerUnavailable
from xlit.scoring import ExternalScorer, FallbackScorer, score_batch_external


class _StubHandler(BaseHTTPRequestHandler):
    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        request = json.loads(self.rfile.read(length))
        server = self.server
        if server.delay_s:
            time.sleep(server.delay_s)
        status, body = server.behavior(request["sentences"])
        payload = body if isinstance(body, bytes) else json.dumps(body).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *args):
        pass


@pytest.fixture
def stub():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _StubHandler)
    server.behavior = lambda sentences: (200, {"scores": [-1.0] * len(sentences)})
    server.delay_s = 0.0
    server.url = f"http://127.0.0.1:{server.server_address[1]}/score"
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield server
    server.shutdown()


def _refused_endpoint() -> str:
    probe = socket.socket()
    probe.bind(("127.0.0.1", 0))
    port = probe.getsockname()[1]
    probe.close()
    return f"http://127.0.0.1:{port}/score"


class _ConstScorer:
    context_size = None

    def __init__(self, value: float):
        self.value = value
        self.batches = 0

    def score_batch(self, sequences):
        self.batches += 1
        return [self.value] * len(sequences)


class TestWireContract:
    def test_echo_order_preserved(self, stub):
        stub.behavior = lambda sentences: (200, {"scores": [-1.0, -2.0, -0.5]})
        assert score_batch_external(stub.url, ["sa", "sb", "sc"]) == [-1.0, -2.0, -0.5]

    def test_scores_align_with_sentences(self, stub):
        stub.behavior = lambda sentences: (200, {"scores": [float(len(s)) for s in sentences]})
        assert score_batch_external(stub.url, ["aa", "bbbb", "c"]) == [2.0, 4.0, 1.0]

    def test_empty_batch_rejected_before_any_request(self):
        with pytest.raises(ValueError):
            score_batch_external(_refused_endpoint(), [])

    def test_count_mismatch(self, stub):
        stub.behavior = lambda sentences: (200, {"scores": [-1.0, -2.0]})
        with pytest.raises(MalformedResponse):
            score_batch_external(stub.url, ["sa", "sb", "sc"])

    def test_non_finite_score(self, stub):
        stub.behavior = lambda sentences: (200, b'{"scores": [NaN]}')
        with pytest.raises(MalformedResponse):
            score_batch_external(stub.url, ["sa"])

    def test_boolean_score(self, stub):
        stub.behavior = lambda sentences: (200, {"scores": [True]})
        with pytest.raises(MalformedResponse):
            score_batch_external(stub.url, ["sa"])

    def test_missing_scores_field(self, stub):
        stub.behavior = lambda sentences: (200, {"values": []})
        with pytest.raises(MalformedResponse):
            score_batch_external(stub.url, ["sa"])

    def test_non_object_payload(self, stub):
        stub.behavior = lambda sentences: (200, [1.0])
        with pytest.raises(MalformedResponse):
            score_batch_external(stub.url, ["sa"])

    def test_unparseable_body_means_unavailable(self, stub):
        stub.behavior = lambda sentences: (200, b"not json at all")
        with pytest.raises(ScorerUnavailable):
            score_batch_external(stub.url, ["sa"])

    def test_http_error_means_unavailable(self, stub):
        stub.behavior = lambda sentences: (500, {"scores": []})
        with pytest.raises(ScorerUnavailable):
            score_batch_external(stub.url, ["sa"])

    def test_connection_refused(self):
        with pytest.raises(ScorerUnavailable):
            score_batch_external(_refused_endpoint(), ["sa"])

    def test_timeout(self, stub):
        stub.delay_s = 0.5
        with pytest.raises(ScorerUnavailable):
            score_batch_external(stub.url, ["sa"], timeout_ms=100)


class TestExternalScorer:
    def test_joins_token_sequences_into_sentences(self, stub):
        seen = []

        def behavior(sentences):
            seen.extend(sentences)
            return 200, {"scores": [0.0] * len(sentences)}

        stub.behavior = behavior
        scorer = ExternalScorer(stub.url)
        scorer.score_batch([["wa", "wb"], ["wc"]])
        assert seen == ["wa wb", "wc"]

    def test_default_context_is_unbounded(self, stub):
        assert ExternalScorer(stub.url).context_size is None


class TestFallbackScorer:
    def test_primary_wins_when_healthy(self, stub):
        stub.behavior = lambda sentences: (200, {"scores": [7.0] * len(sentences)})
        fallback = _ConstScorer(-9.0)
        scorer = FallbackScorer(ExternalScorer(stub.url), fallback)
        assert scorer.score_batch([["wa"]]) == [7.0]
        assert fallback.batches == 0

    def test_falls_back_when_unavailable(self):
        fallback = _ConstScorer(-9.0)
        scorer = FallbackScorer(ExternalScorer(_refused_endpoint()), fallback)
        assert scorer.score_batch([["wa"], ["wb"]]) == [-9.0, -9.0]
        assert fallback.batches == 1

    def test_falls_back_on_malformed_response(self, stub):
        stub.behavior = lambda sentences: (200, {"scores": []})
        fallback = _ConstScorer(-3.0)
        scorer = FallbackScorer(ExternalScorer(stub.url), fallback)
        assert scorer.score_batch([["wa"]]) == [-3.0]

    def test_context_size_follows_primary(self, stub):
        scorer = FallbackScorer(ExternalScorer(stub.url, context_size=2), _ConstScorer(0.0))
        assert scorer.context_size == 2
