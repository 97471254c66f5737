"""Driving the live control service over its wire protocol.

Self-contained: hosts the service in-process (same code path as
`eelsim serve`) and speaks the WebSocket JSON protocol as a client —
change the gait offset to start a turn, then ramp all syringes to dive.
Against a real deployment, point any WebSocket client at ws://host:port/ws
and send exactly these frames.
"""

import json
import math

from fastapi.testclient import TestClient

from eelsim import bundled_scenario_path, load_scenario
from eelsim.server import create_app

cfg = load_scenario(bundled_scenario_path("straight_openwater"))
app = create_app(cfg, decimation=40, realtime_factor=0.0)

with TestClient(app) as client:
    print("scenario:", client.get("/scenario").json()["config"]["name"])
    with client.websocket_connect("/ws") as ws:
        def send(cmd):
            ws.send_text(json.dumps(cmd))
            while True:
                msg = json.loads(ws.receive_text())
                if msg["type"] in ("ack", "error"):
                    print(f"  -> {msg}")
                    return msg

        print("command: 20 deg turning offset")
        send({"type": "set_gait", "seq": 1,
              "gait": {"amplitude_A": math.radians(30), "spatial_freq_xi": 0.5,
                       "temporal_freq_omega": 0.2,
                       "offset_phi": math.radians(20), "joint_count_N": 3}})

        print("command: ramp all syringes full over 10 s")
        send({"type": "set_fill_ramp", "seq": 2, "target": [1, 1, 1, 1],
              "seconds": 10.0})

        print("telemetry while it turns and dives:")
        shown = 0
        while shown < 8:
            msg = json.loads(ws.receive_text())
            if msg["type"] != "telemetry":
                continue
            s = msg["record"]["state"]
            if msg["record"]["sim_time"] < shown * 2.0:
                continue
            print(f"  t={msg['record']['sim_time']:6.2f}s "
                  f"heading={math.degrees(s['head_pose'][2]):+7.1f} deg "
                  f"depth={s['depth_z']:.2f} m fills={s['fills'][0]:.2f}")
            shown += 1
