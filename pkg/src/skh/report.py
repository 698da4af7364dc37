"""Machine- and human-readable reports for the command-line tools.

JSON output is byte-identical across runs on the same input: keys are
sorted and the wall time is reported only in the human rendering.  The
file-output path writes the JSON report, a tab-delimited Betti table,
and a rendered figure side by side.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

Bidegree = tuple[int, int]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witnesses: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        out: dict = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if self.witnesses:
            out["witnesses"] = self.witnesses
        return out


@dataclass
class Report:
    command: str
    inputs: list[dict] = field(default_factory=list)
    betti: dict[Bidegree, int] | None = None
    polynomials: dict[str, str] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    wall_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        out: dict = {"command": self.command, "inputs": self.inputs}
        if self.betti is not None:
            out["betti"] = [
                {"i": i, "j": j, "dim": d} for (i, j), d in sorted(self.betti.items())
            ]
        if self.polynomials:
            out["polynomials"] = dict(sorted(self.polynomials.items()))
        out["checks"] = [c.to_dict() for c in self.checks]
        out["ok"] = self.ok
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for item in self.inputs:
            name = item.get("name")
            label = f" [{name}]" if name else ""
            lines.append(
                f"input{label}: {item['pd']}  "
                f"(n+={item['n_plus']}, n-={item['n_minus']}, r={item['r']})"
            )
        if self.betti is not None:
            lines.append("")
            lines.extend(betti_grid(self.betti))
        for label, poly in sorted(self.polynomials.items()):
            lines.append(f"{label}: {poly}")
        if self.checks:
            lines.append("")
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            detail = f"  {c.detail}" if c.detail else ""
            lines.append(f"[{status}] {c.name}{detail}")
            for w in c.witnesses:
                lines.append(f"         witness: {w}")
        lines.append("")
        lines.append(f"wall time: {self.wall_ms:.1f} ms")
        return "\n".join(lines) + "\n"


def betti_grid(betti: dict[Bidegree, int]) -> list[str]:
    """Render a Betti table as a grid, i across, j down (descending)."""
    if not betti:
        return ["betti table: empty (all homology vanishes)"]
    iis = sorted({i for i, _ in betti})
    jjs = sorted({j for _, j in betti}, reverse=True)
    width = max(3, *(len(str(i)) for i in iis), *(len(str(d)) for d in betti.values()))
    head = "  j\\i |" + "".join(f" {i:>{width}}" for i in iis)
    lines = ["betti table:", head, "  " + "-" * (len(head) - 2)]
    for j in jjs:
        row = f"{j:>5} |"
        for i in iis:
            d = betti.get((i, j), 0)
            row += f" {d if d else '.':>{width}}"
        lines.append(row)
    return lines


def betti_tsv(betti: dict[Bidegree, int]) -> str:
    lines = ["i\tj\tdim"]
    lines.extend(f"{i}\t{j}\t{d}" for (i, j), d in sorted(betti.items()))
    return "\n".join(lines) + "\n"


def render_betti_figure(betti: dict[Bidegree, int], path: Path) -> None:
    """Draw the Betti table on the (i, j) plane and save it to a file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 5))
    if betti:
        iis = [i for i, _ in betti]
        jjs = [j for _, j in betti]
        sizes = [240 * d for d in betti.values()]
        ax.scatter(iis, jjs, s=sizes, color="#3465a4", alpha=0.35, zorder=2)
        for (i, j), d in betti.items():
            ax.annotate(
                str(d), (i, j), ha="center", va="center", fontsize=10, zorder=3
            )
        ax.set_xticks(range(min(iis) - 1, max(iis) + 2))
        ax.set_yticks(range(min(jjs) - 2, max(jjs) + 3, 2))
        ax.set_xlim(min(iis) - 1, max(iis) + 1)
        ax.set_ylim(min(jjs) - 2, max(jjs) + 2)
    else:
        ax.text(0.5, 0.5, "empty", ha="center", va="center", transform=ax.transAxes)
    ax.set_xlabel("homological degree i")
    ax.set_ylabel("quantum degree j")
    ax.set_title("GF(2) Betti table")
    ax.grid(True, linestyle=":", alpha=0.6, zorder=1)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_outputs(report: Report, outdir: Path) -> list[Path]:
    """Write report.json plus, when a Betti table is present, betti.tsv
    and betti.png alongside it.  Returns the written paths."""
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    json_path = outdir / "report.json"
    json_path.write_text(report.to_json())
    written.append(json_path)
    if report.betti is not None:
        tsv_path = outdir / "betti.tsv"
        tsv_path.write_text(betti_tsv(report.betti))
        written.append(tsv_path)
        fig_path = outdir / "betti.png"
        render_betti_figure(report.betti, fig_path)
        written.append(fig_path)
    return written
