"""Run reports, their text/JSON rendering, and deterministic task scans."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Sequence

from . import __version__

JOBS_ENV = "MULTIARR_JOBS"


@dataclass
class RunReport:
    """A command echo, a payload and a pass/fail status.

    ``timing`` is kept out of the body so identical runs give identical bodies.
    """

    command: str
    params: dict
    payload: dict
    ok: bool = True
    timing: float | None = None
    version: str = __version__

    def body(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "status": "ok" if self.ok else "failure",
            "result": self.payload,
            "version": self.version,
        }

    def to_json(self) -> dict:
        out = {"report": self.body()}
        if self.timing is not None:
            out["timing"] = {"seconds": round(self.timing, 6)}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RunReport":
        body = data["report"]
        timing = data.get("timing", {}).get("seconds")
        return cls(body["command"], body["params"], body["result"], body["status"] == "ok", timing, body["version"])


def emit_report(report: RunReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2, sort_keys=True, ensure_ascii=False)
    if fmt == "text":
        return _text(report)
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text: str) -> RunReport:
    return RunReport.from_json(json.loads(text))


def _fmt_params(params: dict) -> str:
    return " ".join(f"{k}={_plain(v)}" for k, v in sorted(params.items()))


def _plain(v) -> str:
    if isinstance(v, list):
        return ",".join(_plain(x) for x in v)
    return str(v)


def _freeness_lines(fr: dict, indent: str = "") -> list[str]:
    lines = [
        f"{indent}verdict: {fr['verdict'].upper()}",
        f"{indent}degrees: {', '.join(str(d) for d in fr['degrees'])} (sum {_degree_sum(fr['degrees'])}, |m| = {fr['multiplicity_total']})",
        f"{indent}det/Q constant: {fr['det_over_Q_constant']}",
    ]
    if fr.get("arrangement"):
        lines.insert(0, f"{indent}arrangement: {fr['arrangement']}")
    return lines


def _degree_sum(degrees) -> str:
    return "n/a" if any(d is None for d in degrees) else str(sum(degrees))


def _text(report: RunReport) -> str:
    lines = [f"{report.command}: {_fmt_params(report.params)}", f"status: {'OK' if report.ok else 'FAILURE'}"]
    lines += _text_payload(report.payload, "")
    if report.timing is not None:
        lines.append(f"time: {report.timing:.3f} s")
    return "\n".join(lines) + "\n"


def _text_payload(payload: Any, indent: str) -> list[str]:
    lines = []
    if isinstance(payload, dict):
        if "verdict" in payload:
            lines += _freeness_lines(payload, indent)
            rest = {k: v for k, v in payload.items() if k not in _FREENESS_KEYS}
            lines += _text_payload(rest, indent)
            return lines
        for key, value in payload.items():
            if isinstance(value, (dict, list)) and value and not _is_flat_list(value):
                lines.append(f"{indent}{key}:")
                lines += _text_payload(value, indent + "  ")
            else:
                lines.append(f"{indent}{key}: {_scalar_text(value)}")
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, dict):
                if "verdict" in item or any(isinstance(v, (dict, list)) and v and not _is_flat_list(v) for v in item.values()):
                    lines.append(f"{indent}-")
                    lines += _text_payload(item, indent + "  ")
                else:
                    lines.append(f"{indent}- " + ", ".join(f"{k}={_scalar_text(v)}" for k, v in item.items()))
            else:
                lines.append(f"{indent}- {_scalar_text(item)}")
    return lines


_FREENESS_KEYS = {"verdict", "degrees", "multiplicity_total", "det_over_Q_constant", "arrangement"}


def _is_flat_list(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _scalar_text(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_scalar_text(v) for v in value) + "]"
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


# -- scans --------------------------------------------------------------------


@dataclass(frozen=True)
class Task:
    """An independent unit of work; ``key`` orders the aggregated results."""

    key: tuple
    func: Callable
    args: tuple = ()
    kwargs: dict = dc_field(default_factory=dict)

    def __call__(self):
        return self.func(*self.args, **self.kwargs)


def _run(task: Task):
    return task.key, task()


def default_parallelism() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{JOBS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{JOBS_ENV} must be a positive integer, got {n}")
    return n


def scan(tasks: Sequence[Task], parallelism: int | None = None) -> list:
    """Run independent tasks, returning results sorted by task key."""
    tasks = list(tasks)
    n = parallelism or default_parallelism()
    if n < 1:
        raise ValueError("parallelism must be positive")
    if n == 1 or len(tasks) <= 1:
        pairs = [_run(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(n, len(tasks))) as pool:
            pairs = list(pool.map(_run, tasks))
    pairs.sort(key=lambda kv: kv[0])
    return [value for _, value in pairs]


__all__ = [
    "JOBS_ENV",
    "RunReport",
    "Task",
    "default_parallelism",
    "emit_report",
    "parse_report",
    "scan",
]
