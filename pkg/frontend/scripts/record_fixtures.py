#!/usr/bin/env python3
"""Record service responses for the frontend contract tests.

Drives the real pcdecomp HTTP service through the exam-session flow
(create, three judgments, analysis, one approximation step, undo) and
writes every response verbatim to tests/fixtures/. Re-run after any
service change:

    python3 scripts/record_fixtures.py
"""

import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from pcdecomp.service import create_app

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def dump(name: str, payload):
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / f"{name}.json").write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {name}.json")


def main() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        client = TestClient(create_app(data_dir=tmp))

        created = client.post("/sessions", json={"labels": ["A", "B", "C"]}).json()
        dump("create_session", created)
        sid = created["id"]
        revision = created["revision"]

        dump("analysis_empty", client.get(f"/sessions/{sid}/analysis").json())

        for step, (i, j, value) in enumerate([(0, 1, 2.0), (1, 2, 3.0), (0, 2, 5.0)], start=1):
            response = client.put(
                f"/sessions/{sid}/entry",
                json={"i": i, "j": j, "value": value, "revision": revision},
            )
            assert response.status_code == 200, response.text
            body = response.json()
            revision = body["revision"]
            dump(f"entry_{step}", body)

        dump("session_full", client.get(f"/sessions/{sid}").json())
        dump("analysis_exam", client.get(f"/sessions/{sid}/analysis").json())

        stepped = client.post(f"/sessions/{sid}/approximate", json={"revision": revision})
        assert stepped.status_code == 200, stepped.text
        dump("approximate", stepped.json())
        revision = stepped.json()["revision"]

        undone = client.post(f"/sessions/{sid}/undo", json={"revision": revision})
        assert undone.status_code == 200, undone.text
        dump("undo", undone.json())

        conflict = client.put(
            f"/sessions/{sid}/entry",
            json={"i": 0, "j": 1, "value": 4.0, "revision": 0},
        )
        assert conflict.status_code == 409, conflict.text
        dump("revision_conflict", {"status": conflict.status_code, "body": conflict.json()})
    return 0


if __name__ == "__main__":
    sys.exit(main())
