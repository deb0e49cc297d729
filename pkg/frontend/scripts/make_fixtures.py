"""Capture real API payloads as JSON fixtures for the frontend tests.

Run from this directory with the dualbloch package installed:

    python3 make_fixtures.py
"""

import json
import pathlib

from starlette.testclient import TestClient

from dualbloch.api import create_app

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def dump(name: str, payload: object) -> None:
    path = OUT / name
    path.write_text(json.dumps(payload, indent=1) + "\n")
    print(f"wrote {path}")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())

    dump("planes.json", client.get("/planes").json())

    created = client.post("/sessions", json={"state": "psi-"}).json()
    dump("session-singlet.json", created)

    applied = client.post(
        f"/sessions/{created['id']}/apply",
        json={"generator": "XY", "angle": 0.5},
    ).json()
    dump("session-after-xy.json", applied)

    undone = client.post(f"/sessions/{created['id']}/undo").json()
    dump("session-undo.json", undone)

    dump("trace-plus-up.json", client.get("/gates/cnot/trace", params={"input": "1,0,1,0"}).json())

    dump("session-uu.json", client.post("/sessions", json={"state": "uu"}).json())

    dump("session-partial.json", client.post("/sessions", json={"state": "P"}).json())

    dump("projection-samples.json", projection_samples())


def projection_samples() -> list[dict]:
    """Screen coordinates from the server-side renderer, as an oracle."""
    import numpy as np

    from dualbloch.render import _Camera

    rng = np.random.default_rng(7)
    points = [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, -1.0],
    ]
    for _ in range(6):
        v = rng.normal(size=3)
        points.append(list(v / np.linalg.norm(v)))
    samples = []
    for elevation, azimuth in [(70.0, 110.0), (30.0, 45.0), (90.0, 0.0), (5.0, 300.0)]:
        cam = _Camera(elevation, azimuth, 1.0)
        samples.append(
            {
                "camera": {"elevation": elevation, "azimuth": azimuth},
                "points": points,
                "screen": [list(cam.point(p)) for p in points],
            }
        )
    return samples


if __name__ == "__main__":
    main()
