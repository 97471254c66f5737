"""Live control service: a WebSocket endpoint streaming telemetry frames and
accepting commands, wrapped around the single-threaded simulation core.

One controlling client at a time (first to send a command), any number of
observers. Commands take effect at the next step boundary and are
acknowledged with their sequence number; the simulation auto-pauses when the
controller disconnects. Wall-clock pacing is configurable; telemetry is
decimated to every Nth step.
"""

from __future__ import annotations

import asyncio
import json
import time
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .engine import EngineCore, Pause
from .protocol import (ack_message, command_from_dict, error_message,
                       telemetry_message, ProtocolError)
from .scenario import ScenarioConfig

QUEUE_LIMIT = 512  # frames buffered per client before the oldest are dropped


class ControlService:
    def __init__(self, config: ScenarioConfig, decimation: int = 4,
                 realtime_factor: float = 1.0):
        self.core = EngineCore(config)
        self.decimation = max(1, decimation)
        self.realtime_factor = realtime_factor
        self.clients: dict[int, asyncio.Queue] = {}
        self.controller_id: int | None = None
        self._next_id = 0
        self._seq_out = 0
        self._running = True

    # -- client registry ----------------------------------------------------

    def register(self) -> tuple[int, asyncio.Queue]:
        cid = self._next_id
        self._next_id += 1
        q: asyncio.Queue = asyncio.Queue()
        self.clients[cid] = q
        return cid, q

    def unregister(self, cid: int) -> None:
        self.clients.pop(cid, None)
        if cid == self.controller_id:
            self.controller_id = None
            self.core.enqueue(Pause())
            self.core.drain_inbox()  # controller gone: pause immediately

    def _push(self, q: asyncio.Queue, msg: dict) -> None:
        while q.qsize() >= QUEUE_LIMIT:  # slow consumer: drop oldest frame
            try:
                q.get_nowait()
            except asyncio.QueueEmpty:
                break
        q.put_nowait(msg)

    def broadcast(self, msg: dict) -> None:
        for q in self.clients.values():
            self._push(q, msg)

    # -- command path ---------------------------------------------------------

    def handle_frame(self, cid: int, text: str) -> dict:
        """Parse one client frame; returns the reply frame (ack or error)."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            return error_message(f"malformed JSON: {e}")
        seq = data.get("seq") if isinstance(data, dict) else None
        if self.controller_id is None:
            self.controller_id = cid
        if cid != self.controller_id:
            return error_message("not controller: another client holds the session", seq)
        try:
            cmd = command_from_dict(data)
        except ProtocolError as e:
            return error_message(str(e), seq)
        self.core.enqueue(cmd)
        applies_at = (self.core.step_index + 1) * self.core.config.dt
        return ack_message(seq, applies_at)

    # -- simulation task --------------------------------------------------------

    async def sim_loop(self) -> None:
        next_wall = time.monotonic()
        while self._running:
            if self.core.paused or self.core.finished:
                self.core.drain_inbox()  # Resume/Reset must work while idle
                next_wall = time.monotonic()
                await asyncio.sleep(0.02)
                continue
            rec = self.core.step()
            if self.core.step_index % self.decimation == 0 or rec.outcome:
                self._seq_out += 1
                self.broadcast(telemetry_message(rec, self._seq_out))
            if self.realtime_factor > 0:
                next_wall += self.core.config.dt / self.realtime_factor
                delay = next_wall - time.monotonic()
                if delay > 0:
                    await asyncio.sleep(delay)
                else:
                    next_wall = time.monotonic()
            elif self.core.step_index % 16 == 0:
                # unpaced: still yield so client tasks are serviced
                await asyncio.sleep(0)

    def stop(self) -> None:
        self._running = False


def create_app(config: ScenarioConfig, decimation: int | None = None,
               realtime_factor: float = 1.0,
               console_dir: str | Path | None = None) -> FastAPI:
    from contextlib import asynccontextmanager

    if decimation is None:  # scenario field, else every 4th step
        decimation = config.telemetry_decimation if config.telemetry_decimation > 1 else 4
    service = ControlService(config, decimation, realtime_factor)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        task = asyncio.create_task(service.sim_loop())
        yield
        service.stop()
        task.cancel()

    app = FastAPI(title="eelsim control service", lifespan=lifespan)
    app.state.service = service

    @app.get("/healthz")
    async def health() -> JSONResponse:
        return JSONResponse({
            "ok": True,
            "sim_time": service.core.state.sim_time,
            "paused": service.core.paused,
            "finished": service.core.finished,
        })

    @app.get("/scenario")
    async def scenario() -> JSONResponse:
        return JSONResponse({
            "config": service.core.config.to_dict(),
            "config_hash": service.core.config.config_hash(),
            "decimation": service.decimation,
        })

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket) -> None:
        await ws.accept()
        cid, queue = service.register()

        async def pump() -> None:
            while True:
                msg = await queue.get()
                await ws.send_text(json.dumps(msg, separators=(",", ":")))

        sender = asyncio.create_task(pump())
        try:
            while True:
                text = await ws.receive_text()
                reply = service.handle_frame(cid, text)
                # replies bypass the telemetry queue so acks are prompt even
                # when the stream is saturated
                await ws.send_text(json.dumps(reply, separators=(",", ":")))
        except WebSocketDisconnect:
            pass
        finally:
            sender.cancel()
            service.unregister(cid)

    if console_dir is not None and Path(console_dir).is_dir():
        app.mount("/console", StaticFiles(directory=str(console_dir), html=True),
                  name="console")
    return app


def serve(config: ScenarioConfig, host: str = "127.0.0.1", port: int = 8700,
          decimation: int | None = None, realtime_factor: float = 1.0,
          console_dir: str | Path | None = None) -> None:
    """Run the control service until interrupted (blocking)."""
    import uvicorn

    app = create_app(config, decimation, realtime_factor, console_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
