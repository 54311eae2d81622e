"""Deterministic text/JSON reports for the command-line front end."""

import json

from .scalar import Scalar, format_scalar

__all__ = ["Report", "Section", "cell"]


def cell(x):
    if isinstance(x, Scalar):
        return format_scalar(x)
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(cell(y) for y in x) + ")"
    return str(x)


class Section:
    def __init__(self, title, headers=(), rows=(), status="INFO", notes=()):
        assert status in ("PASS", "FAIL", "INFO")
        self.title = title
        self.headers = [str(h) for h in headers]
        self.rows = [[cell(x) for x in r] for r in rows]
        self.status = status
        self.notes = [str(n) for n in notes]

    def as_dict(self):
        d = {"title": self.title, "status": self.status, "headers": self.headers, "rows": self.rows}
        if self.notes:
            d["notes"] = self.notes
        return d


class Report:
    """Command echo, instance metadata and a list of sections.

    A check section is PASS when it has no residual rows; any FAIL section
    makes the exit code 1.
    """

    def __init__(self, command, seed=0, instance=None):
        self.command = command
        self.seed = seed
        self.instance = dict(instance or {})
        self.sections = []

    def info(self, title, headers=(), rows=(), notes=()):
        self.sections.append(Section(title, headers, rows, "INFO", notes))

    def check(self, title, headers=(), residuals=(), notes=()):
        """Residual rows mean failure; an empty table passes."""
        residuals = list(residuals)
        self.sections.append(Section(title, headers, residuals, "FAIL" if residuals else "PASS", notes))

    def verdict(self, title, passed, headers=(), rows=(), notes=()):
        self.sections.append(Section(title, headers, rows, "PASS" if passed else "FAIL", notes))

    @property
    def exit_code(self):
        return 1 if any(s.status == "FAIL" for s in self.sections) else 0

    @property
    def status(self):
        return "FAIL" if self.exit_code else "PASS"

    def as_dict(self):
        return {"command": self.command, "seed": self.seed, "instance": self.instance,
                "sections": [s.as_dict() for s in self.sections],
                "status": self.status, "exit_code": self.exit_code}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=1, ensure_ascii=False) + "\n"

    def to_text(self):
        out = [f"$ {self.command}", f"seed: {self.seed}"]
        for k, v in self.instance.items():
            out.append(f"{k}: {v}")
        for s in self.sections:
            out.append("")
            out.append(f"[{s.status}] {s.title}")
            if s.rows:
                table = ([s.headers] if s.headers else []) + s.rows
                widths = [max(len(r[i]) for r in table if i < len(r)) for i in range(max(len(r) for r in table))]
                for r in table:
                    out.append("  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
            for n in s.notes:
                out.append(f"  note: {n}")
        out.append("")
        out.append(f"status: {self.status} (exit {self.exit_code})")
        return "\n".join(out) + "\n"

    def render(self, fmt):
        return self.to_json() if fmt == "json" else self.to_text()
