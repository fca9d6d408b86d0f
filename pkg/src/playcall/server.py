"""HTTP advisor service over the ranking engine.

Endpoints:
  GET  /health  liveness check
  GET  /models  metadata for every loaded model plus the team roster
  POST /parse   one raw play record -> features and labels, or a rejection
  POST /rank    situation (+ optional playbook) -> ranked play list

Responses are JSON. Errors carry {"error": {"code", "detail"}} with a
stable machine-readable code. Every response is a pure function of the
loaded bundles and the request body.
"""

import json
import os
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .dataset import record_from_json
from .encode import EncodingError
from .labels import compute_labels
from .persist import BundleError, ModelBundle, load_model
from .playparse import ParseError, classify_record, parse_play
from .ranking import Situation, choose_primary, enumerate_candidates, rank_plays

DEFAULT_PORT = 8040


class ApiError(Exception):
    """An error response: HTTP status plus a machine-readable code."""

    def __init__(self, status: int, code: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.code = code
        self.detail = detail


def load_bundle_dir(directory: str) -> dict:
    """Load every *.json model file in a directory, keyed by target.

    Two files predicting the same target is a configuration error.
    """
    if not os.path.isdir(directory):
        raise BundleError("corrupt_file", f"not a directory: {directory}")
    bundles = {}
    for name in sorted(os.listdir(directory)):
        if not name.endswith(".json"):
            continue
        bundle = load_model(os.path.join(directory, name))
        if bundle.target in bundles:
            raise BundleError(
                "invalid_bundle",
                f"duplicate bundle for target {bundle.target!r}: {name}",
            )
        bundles[bundle.target] = bundle
    return bundles


class AdvisorService:
    """The shared state behind the HTTP handlers.

    Bundles are immutable once loaded; reload() swaps the whole mapping
    in one reference assignment, so in-flight requests keep the set they
    started with.
    """

    def __init__(self, bundles=None):
        self._bundles = dict(bundles or {})
        for target, bundle in self._bundles.items():
            if not isinstance(bundle, ModelBundle):
                raise TypeError(f"bundle for {target!r} is not a ModelBundle")
            if bundle.target != target:
                raise ValueError(
                    f"bundle keyed {target!r} predicts {bundle.target!r}"
                )

    @property
    def bundles(self) -> dict:
        return self._bundles

    def reload(self, bundles) -> None:
        self._bundles = AdvisorService(bundles).bundles

    # --- endpoint bodies ---------------------------------------------

    def health(self) -> dict:
        return {"status": "ok", "models": len(self._bundles)}

    def models(self) -> dict:
        bundles = self._bundles
        teams = sorted({t for b in bundles.values() for t in b.schema.teams})
        return {
            "models": [bundles[t].describe() for t in sorted(bundles)],
            "teams": teams,
        }

    def parse(self, body: dict) -> dict:
        try:
            record = record_from_json(body)
        except (TypeError, ValueError) as err:
            raise ApiError(400, "invalid_record", str(err)) from None
        rejection = classify_record(record)
        if rejection is not None:
            return {"kept": False, "rejection": {"reason": rejection.reason}}
        try:
            features, outcome = parse_play(record)
        except ParseError as err:
            raise ApiError(400, "parse_error", str(err)) from None
        labels = compute_labels(features, outcome)
        return {
            "kept": True,
            "features": features.to_dict(),
            "outcome": outcome.to_dict(),
            "labels": labels.to_dict(),
        }

    def rank(self, body: dict) -> dict:
        bundles = self._bundles
        if not bundles:
            raise ApiError(503, "no_models", "no model bundles are loaded")
        if "situation" not in body:
            raise ApiError(400, "missing_field", "request needs a situation")
        try:
            situation = Situation.from_dict(body["situation"])
        except KeyError as err:
            raise ApiError(
                400, "missing_field", f"situation needs {err.args[0]!r}"
            ) from None
        except (TypeError, ValueError) as err:
            raise ApiError(400, "invalid_situation", str(err)) from None
        try:
            candidates = enumerate_candidates(body.get("playbook"))
        except (TypeError, ValueError, KeyError) as err:
            raise ApiError(400, "invalid_playbook", str(err)) from None
        primary = body.get("primary")
        try:
            primary = choose_primary(bundles, primary)
            ranked = rank_plays(situation, candidates, bundles, primary)
        except EncodingError as err:
            raise ApiError(400, "unknown_team", str(err)) from None
        except ValueError as err:
            raise ApiError(400, "invalid_primary", str(err)) from None
        return {
            "primary": primary,
            "situation": situation.to_dict(),
            "plays": [rp.to_dict() for rp in ranked],
        }


class AdvisorHandler(BaseHTTPRequestHandler):
    service: AdvisorService = None
    quiet = True
    protocol_version = "HTTP/1.1"
    server_version = "playcall-advisor"

    _GET_ROUTES = ("/health", "/models")
    _POST_ROUTES = ("/parse", "/rank")

    def log_message(self, fmt, *args):
        if not self.quiet:
            super().log_message(fmt, *args)

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_body(self, err: ApiError) -> None:
        self._send_json(
            err.status, {"error": {"code": err.code, "detail": err.detail}}
        )

    def _read_body(self) -> dict:
        length = self.headers.get("Content-Length")
        try:
            n = int(length)
        except (TypeError, ValueError):
            raise ApiError(400, "bad_json", "request needs a JSON body")
        raw = self.rfile.read(n)
        try:
            body = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as err:
            raise ApiError(400, "bad_json", f"body is not valid JSON: {err}")
        if not isinstance(body, dict):
            raise ApiError(400, "bad_json", "body must be a JSON object")
        return body

    def _route(self, method: str) -> None:
        path = self.path.split("?", 1)[0]
        try:
            known = self._GET_ROUTES + self._POST_ROUTES
            if path not in known:
                raise ApiError(404, "not_found", f"no such endpoint: {path}")
            expected = "GET" if path in self._GET_ROUTES else "POST"
            if method != expected:
                raise ApiError(
                    405, "method_not_allowed", f"{path} expects {expected}"
                )
            if method == "GET":
                payload = (
                    self.service.health()
                    if path == "/health"
                    else self.service.models()
                )
            else:
                body = self._read_body()
                payload = (
                    self.service.parse(body)
                    if path == "/parse"
                    else self.service.rank(body)
                )
            self._send_json(200, payload)
        except ApiError as err:
            self._send_error_body(err)
        except Exception as err:  # pragma: no cover - defensive backstop
            self._send_error_body(ApiError(500, "internal_error", str(err)))

    def do_GET(self):
        self._route("GET")

    def do_POST(self):
        self._route("POST")


def make_server(
    bundles, host: str = "127.0.0.1", port: int = DEFAULT_PORT, quiet: bool = True
) -> ThreadingHTTPServer:
    """Build the HTTP server; caller runs serve_forever()/shutdown().

    ``bundles`` may be an AdvisorService, a target->bundle mapping, or a
    bundle list. Pass port 0 to bind any free port (see server_address).
    """
    if isinstance(bundles, AdvisorService):
        service = bundles
    elif isinstance(bundles, dict):
        service = AdvisorService(bundles)
    else:
        service = AdvisorService({b.target: b for b in bundles})

    class Handler(AdvisorHandler):
        pass

    Handler.service = service
    Handler.quiet = quiet
    httpd = ThreadingHTTPServer((host, port), Handler)
    httpd.service = service
    return httpd
