"""Deterministic structured reports.

A report is a command echo, the library version, and an ordered list of
check records {name, anchor, verdict, data}.  Serialization is stable:
given the same job, the emitted JSON is byte-identical across runs (no
timestamps or machine state inside).  Wall-clock timing is carried on
the object for human summaries but never serialized.
"""

import json

from . import __version__
from .coeffs import ParamPoly, rat_str, is_rational


def _plain(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if is_rational(obj):
        return rat_str(obj)
    if isinstance(obj, ParamPoly):
        return obj.to_str()
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "to_str"):
        return obj.to_str()
    return str(obj)


class Report:
    def __init__(self, command):
        self.command = command
        self.version = __version__
        self.checks = []
        self.wall_seconds = None

    def add(self, name, anchor, verdict, data=None):
        if verdict not in ("pass", "fail", "info"):
            raise ValueError("verdict must be pass/fail/info")
        self.checks.append({"name": name, "anchor": anchor, "verdict": verdict, "data": _plain(data)})

    def add_bool(self, name, anchor, ok, data=None):
        self.add(name, anchor, "pass" if ok else "fail", data)

    @property
    def all_pass(self):
        return all(c["verdict"] != "fail" for c in self.checks)

    def to_dict(self):
        return {"command": self.command, "version": self.version, "checks": self.checks}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def summary_lines(self):
        out = []
        for c in self.checks:
            out.append("[%s] %s" % (c["verdict"].upper(), c["name"]))
        out.append("overall: %s" % ("PASS" if self.all_pass else "FAIL"))
        return out
