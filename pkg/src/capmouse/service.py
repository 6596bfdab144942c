"""Local streaming service: control messages in, mouse events out.

Per connection the client sends single-line JSON control records (hello,
snapshot_request, calibrate, start, stop) interleaved with binary GFRM frame
records; the server answers with calibrated/event/error records. Control and
binary records are distinguishable by their first byte ("{" vs "G").

Browsers cannot open raw TCP sockets, so the same port also accepts RFC 6455
WebSocket connections (sniffed via the "GET " request line; a GFRM record is
never the first thing on a well-behaved connection). Over WebSocket, text
messages carry the JSON records and binary messages carry GFRM records - the
message vocabulary is identical on both framings.

Each connection owns an independent session; there is no shared mutable
state between connections.
"""

from __future__ import annotations

import base64
import hashlib
import io
import json
import logging
import socketserver
import struct

import numpy as np

from .color_model import ChromaSignature, calibrate_signature
from .config import EngineConfig
from .errors import ConfigError, ProtocolError, SequencingError, StreamError
from .frame_io import GFRM_MAGIC, read_frame_record
from .pipeline import GestureSession
from .pointer_mapping import PixelPoint
from .segmentation import Frame

log = logging.getLogger("capmouse.service")

_WS_GUID = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"


def _record(kind: str, **fields) -> str:
    return json.dumps({"kind": kind, **fields}, separators=(",", ":"))


def error_record(code: str, detail: str) -> str:
    return _record("error", code=code, detail=detail)


class Session:
    """Transport-independent session state machine.

    Frames received before `start` only refresh the calibration snapshot;
    frames received after `start` run the pipeline and produce events, and
    their embedded indices must be strictly increasing.
    """

    def __init__(self, base_config: EngineConfig):
        self.base_config = base_config
        self.config: EngineConfig | None = None
        self.snapshot: Frame | None = None
        self.snapshot_index: int | None = None
        self.gestures: GestureSession | None = None
        self.streaming = False
        self.last_index: int | None = None

    # -- control plane ------------------------------------------------------

    def on_control(self, msg) -> list[str]:
        if not isinstance(msg, dict) or "kind" not in msg:
            raise ProtocolError("bad_message", "control records are JSON objects with a kind")
        kind = msg["kind"]
        if self.config is None and kind != "hello":
            raise ProtocolError("hello_required", "first message must be hello")
        if kind == "hello":
            return self._on_hello(msg)
        if kind == "snapshot_request":
            if self.snapshot is None:
                return [error_record("no_snapshot", "no frame received yet")]
            return [
                _record(
                    "snapshot_ok",
                    frame=self.snapshot_index,
                    width=self.snapshot.width,
                    height=self.snapshot.height,
                )
            ]
        if kind == "calibrate":
            return self._on_calibrate(msg)
        if kind == "start":
            if self.gestures is None:
                return [error_record("not_calibrated", "calibrate before start")]
            self.streaming = True
            return []
        if kind == "stop":
            self.streaming = False
            return []
        raise ProtocolError("bad_message", f"unknown control kind {kind!r}")

    def _on_hello(self, msg) -> list[str]:
        if self.config is not None:
            raise ProtocolError("bad_message", "duplicate hello")
        overrides = msg.get("config", {})
        if not isinstance(overrides, dict):
            raise ProtocolError("bad_config", "hello config must be an object")
        try:
            self.config = EngineConfig.from_dict(overrides, base=self.base_config)
        except ConfigError as exc:
            raise ProtocolError("bad_config", str(exc)) from None
        return [_record("hello_ok", config=self.config.to_dict())]

    def _on_calibrate(self, msg) -> list[str]:
        assert self.config is not None
        if self.snapshot is None:
            return [error_record("no_snapshot", "send a snapshot frame before calibrating")]
        try:
            x = float(msg["x"])
            y = float(msg["y"])
            window = int(msg.get("window", 3))
        except (KeyError, TypeError, ValueError):
            return [error_record("bad_calibration", "calibrate needs numeric x and y")]
        try:
            base = calibrate_signature(
                self.snapshot, PixelPoint(x, y), window, self.config.chroma_threshold
            )
        except ValueError as exc:
            return [error_record("bad_calibration", str(exc))]
        signature = ChromaSignature(base.target, self.config.effective_threshold(base.y))
        self.gestures = GestureSession(self.config, signature)
        self.last_index = None
        return [
            _record(
                "calibrated",
                y=signature.y,
                cb=signature.cb,
                cr=signature.cr,
                threshold=signature.threshold,
            )
        ]

    # -- data plane ---------------------------------------------------------

    def on_frame(self, index: int, frame: Frame) -> list[str]:
        if self.config is None:
            raise ProtocolError("hello_required", "first message must be hello")
        if (frame.width, frame.height) != self.config.cam_size:
            raise ProtocolError(
                "dims_mismatch",
                f"frame is {frame.width}x{frame.height}, session is "
                f"{self.config.cam_width}x{self.config.cam_height}",
            )
        if not self.streaming:
            self.snapshot = frame
            self.snapshot_index = index
            return []
        if self.last_index is not None and index <= self.last_index:
            raise ProtocolError(
                "bad_frame_order", f"frame {index} after frame {self.last_index}"
            )
        self.last_index = index
        assert self.gestures is not None
        events = self.gestures.process_frame(frame, index)
        return [e.to_record() for e in events]


class _Handler(socketserver.StreamRequestHandler):
    """Sniffs the first bytes of a connection and picks the framing."""

    def handle(self):
        try:
            first = self.rfile.peek(1)[:1]
            if first == b"":
                return
            if first == b"{":
                self._run_raw()
            elif first == b"G":
                head = self._read_exact(4)
                if head == b"GET ":
                    self._run_websocket()
                elif head == GFRM_MAGIC:
                    self._send_raw([error_record("hello_required", "first message must be hello")])
                else:
                    self._send_raw([error_record("bad_message", f"unexpected bytes {head!r}")])
            else:
                self._send_raw([error_record("bad_message", f"unexpected byte {first!r}")])
        except (ConnectionError, BrokenPipeError, OSError):
            log.debug("connection dropped", exc_info=True)

    def _read_exact(self, n: int) -> bytes:
        data = self.rfile.read(n)
        if len(data) < n:
            raise ConnectionError("peer closed mid-record")
        return data

    # -- raw TCP framing ----------------------------------------------------

    def _send_raw(self, lines: list[str]) -> None:
        for line in lines:
            self.wfile.write(line.encode("utf-8") + b"\n")
        self.wfile.flush()

    def _run_raw(self) -> None:
        session = Session(self.server.base_config)
        while True:
            first = self.rfile.peek(1)[:1]
            if first == b"":
                return
            try:
                if first == b"{":
                    line = self.rfile.readline()
                    if not line:
                        return
                    try:
                        msg = json.loads(line)
                    except json.JSONDecodeError as exc:
                        raise ProtocolError("bad_message", f"bad JSON: {exc}") from None
                    responses = session.on_control(msg)
                elif first == b"G":
                    record = read_frame_record(self.rfile)
                    if record is None:
                        return
                    responses = session.on_frame(*record)
                else:
                    raise ProtocolError("bad_message", f"unexpected byte {first!r}")
            except ProtocolError as exc:
                self._send_raw([error_record(exc.code, exc.detail)])
                return
            except (StreamError, SequencingError) as exc:
                self._send_raw([error_record("stream_error", str(exc))])
                return
            self._send_raw(responses)

    # -- WebSocket framing ----------------------------------------------------

    def _run_websocket(self) -> None:
        request_line = self.rfile.readline()  # rest of "GET <path> HTTP/1.1"
        headers = {}
        while True:
            line = self.rfile.readline()
            if not line or line in (b"\r\n", b"\n"):
                break
            name, _, value = line.decode("latin-1").partition(":")
            headers[name.strip().lower()] = value.strip()
        key = headers.get("sec-websocket-key")
        if key is None or "websocket" not in headers.get("upgrade", "").lower():
            self.wfile.write(b"HTTP/1.1 400 Bad Request\r\n\r\nwebsocket required")
            self.wfile.flush()
            return
        log.debug("websocket upgrade for %r", request_line)
        accept = base64.b64encode(hashlib.sha1((key + _WS_GUID).encode()).digest()).decode()
        self.wfile.write(
            (
                "HTTP/1.1 101 Switching Protocols\r\n"
                "Upgrade: websocket\r\n"
                "Connection: Upgrade\r\n"
                f"Sec-WebSocket-Accept: {accept}\r\n\r\n"
            ).encode("latin-1")
        )
        self.wfile.flush()

        session = Session(self.server.base_config)
        while True:
            message = self._ws_read_message()
            if message is None:
                return
            opcode, payload = message
            try:
                if opcode == 1:
                    try:
                        msg = json.loads(payload.decode("utf-8"))
                    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                        raise ProtocolError("bad_message", f"bad JSON: {exc}") from None
                    responses = session.on_control(msg)
                elif opcode == 2:
                    record = read_frame_record(io.BytesIO(payload))
                    if record is None:
                        raise StreamError("empty binary message")
                    responses = session.on_frame(*record)
                else:
                    continue
            except ProtocolError as exc:
                self._ws_send_text(error_record(exc.code, exc.detail))
                self._ws_send_frame(8, b"")
                return
            except (StreamError, SequencingError) as exc:
                self._ws_send_text(error_record("stream_error", str(exc)))
                self._ws_send_frame(8, b"")
                return
            for line in responses:
                self._ws_send_text(line)

    def _ws_read_frame(self):
        header = self.rfile.read(2)
        if len(header) < 2:
            return None
        fin = bool(header[0] & 0x80)
        opcode = header[0] & 0x0F
        masked = bool(header[1] & 0x80)
        length = header[1] & 0x7F
        if length == 126:
            length = struct.unpack(">H", self._read_exact(2))[0]
        elif length == 127:
            length = struct.unpack(">Q", self._read_exact(8))[0]
        mask = self._read_exact(4) if masked else b""
        payload = self._read_exact(length) if length else b""
        if masked and length:
            data = np.frombuffer(payload, dtype=np.uint8)
            pattern = np.frombuffer((mask * (length // 4 + 1))[:length], dtype=np.uint8)
            payload = (data ^ pattern).tobytes()
        return fin, opcode, payload

    def _ws_read_message(self):
        """Assemble one data message; answers pings, None on close/EOF."""
        opcode = None
        chunks: list[bytes] = []
        while True:
            frame = self._ws_read_frame()
            if frame is None:
                return None
            fin, op, payload = frame
            if op == 8:
                return None
            if op == 9:
                self._ws_send_frame(10, payload)
                continue
            if op == 10:
                continue
            if op in (1, 2):
                opcode = op
                chunks = [payload]
            elif op == 0 and opcode is not None:
                chunks.append(payload)
            else:
                return None
            if fin and opcode is not None:
                return opcode, b"".join(chunks)

    def _ws_send_frame(self, opcode: int, payload: bytes) -> None:
        head = bytes([0x80 | opcode])
        n = len(payload)
        if n < 126:
            head += bytes([n])
        elif n < 1 << 16:
            head += bytes([126]) + struct.pack(">H", n)
        else:
            head += bytes([127]) + struct.pack(">Q", n)
        self.wfile.write(head + payload)
        self.wfile.flush()

    def _ws_send_text(self, text: str) -> None:
        self._ws_send_frame(1, text.encode("utf-8"))


class GestureServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, address, base_config: EngineConfig):
        super().__init__(address, _Handler)
        self.base_config = base_config

    @property
    def port(self) -> int:
        return self.server_address[1]


def create_server(
    host: str = "127.0.0.1", port: int = 7600, config: EngineConfig | None = None
) -> GestureServer:
    """Bind the service; port 0 picks a free port (see server.port)."""
    return GestureServer((host, port), config or EngineConfig())
