#!/usr/bin/env python3
# Copyright 2026 The CID Toolkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Deterministic stand-in for a model bridge speaking newline JSON on stdio.

Modes (first argument): ok, bad-reqid, short-logits, error, die-after=N,
object-results.
"""

import json
import sys

VOCAB = 6


def logits(prefix):
    # Depends on the whole prefix so context removal is observable.
    h = sum((i + 1) * (t + 1) for i, t in enumerate(prefix)) % 7
    out = [float((h * (v + 3)) % 5) - 2.0 for v in range(VOCAB)]
    out[VOCAB - 1] = None  # transported -inf
    return out


def main():
    mode = sys.argv[1] if len(sys.argv) > 1 else "ok"
    served = 0
    for line in sys.stdin:
        req = json.loads(line)
        rid = req["req_id"]
        op = req["op"]
        served += 1
        if mode.startswith("die-after=") and served > int(mode.split("=")[1]):
            return
        if op == "info":
            result = {"vocab_size": VOCAB, "model": "fake"}
        elif mode == "error" and op == "logits":
            print(json.dumps({"req_id": rid, "error": "boom"}), flush=True)
            continue
        elif op == "encode":
            ids = [len(w) % VOCAB for w in req["payload"].split()]
            result = {"ids": ids} if mode == "object-results" else ids
        elif op == "logits":
            values = logits(req["payload"])
            if mode == "short-logits":
                values = values[:-1]
            result = {"logits": values} if mode == "object-results" else values
        else:
            print(json.dumps({"req_id": rid, "error": "unknown op"}), flush=True)
            continue
        if mode == "bad-reqid" and op != "info":
            rid += 100
        print(json.dumps({"req_id": rid, "result": result}), flush=True)


if __name__ == "__main__":
    main()
