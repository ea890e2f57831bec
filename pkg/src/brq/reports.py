"""Report objects produced by the Brauer-group computations.

Reports render deterministically: JSON with sorted keys and a fixed text
layout, no timestamps unless explicitly stamped by the CLI.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .linalg import AbelianStructure


def describe_factors(factors):
    if not factors:
        return "0"
    return " + ".join(f"Z/{d}" for d in factors)


@dataclass
class BrauerReport:
    """Outcome of one Brauer-group computation."""

    kind: str
    group_order: int
    modulus: int | None
    stack_group: AbelianStructure
    unramified_group: AbelianStructure
    generator_descriptions: list
    subgroup_diagnostics: list
    flags: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    def to_json_dict(self, include_witnesses=False):
        doc = {
            "kind": self.kind,
            "group_order": self.group_order,
            "modulus": self.modulus,
            "stack_group": {
                "invariant_factors": self.stack_group.to_json(),
                "description": describe_factors(self.stack_group.invariant_factors),
            },
            "unramified_group": {
                "invariant_factors": self.unramified_group.to_json(),
                "description": describe_factors(self.unramified_group.invariant_factors),
            },
            "generators": list(self.generator_descriptions),
            "subgroups": self.subgroup_diagnostics,
            "flags": dict(sorted(self.flags.items())),
            "notes": list(self.notes),
        }
        if include_witnesses:
            doc["witnesses"] = self.witnesses
        return doc

    def to_json(self, include_witnesses=False):
        return json.dumps(self.to_json_dict(include_witnesses), sort_keys=True,
                          separators=(",", ":")) + "\n"

    def to_text(self):
        lines = []
        lines.append(f"computation: {self.kind}")
        lines.append(f"group order: {self.group_order}")
        if self.modulus:
            lines.append(f"coefficient modulus: {self.modulus}")
        lines.append(f"stack Brauer group: {describe_factors(self.stack_group.invariant_factors)}"
                     f"  {list(self.stack_group.invariant_factors)}")
        lines.append("unramified Brauer group: "
                     f"{describe_factors(self.unramified_group.invariant_factors)}"
                     f"  {list(self.unramified_group.invariant_factors)}")
        if self.generator_descriptions:
            lines.append("generators:")
            for g in self.generator_descriptions:
                lines.append(f"  - {g}")
        if self.flags:
            for k, v in sorted(self.flags.items()):
                lines.append(f"flag {k}: {v}")
        if self.subgroup_diagnostics:
            lines.append(f"bicyclic subgroups examined: {len(self.subgroup_diagnostics)}")
            for row in self.subgroup_diagnostics:
                surv = ",".join("1" if s else "0" for s in row["survivors"])
                lines.append(
                    f"  subgroup order {row['order']:>3} elements {row['elements']}"
                    f" survivors [{surv}]")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"
