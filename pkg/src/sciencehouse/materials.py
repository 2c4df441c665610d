"""Material table: thermal, electrical and friction properties.

Materials are loaded from the versioned ``data/materials.yaml`` table.
Masked task variations add synthetic materials (randomized phase points
or conductivity) to a per-world copy of the table at generation time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

import yaml

SOLID = "solid"
LIQUID = "liquid"
GAS = "gas"
STATES = (SOLID, LIQUID, GAS)


@dataclass
class Material:
    name: str
    thermal_conduction_coeff: float
    melting_point: float
    boiling_point: float
    combustion_point: float | None = None
    electrically_conductive: bool = False
    friction_coeff: float = 0.5
    phase_names: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.thermal_conduction_coeff <= 1.0:
            raise ValueError(f"{self.name}: conduction coeff outside [0, 1]")
        if not 0.0 <= self.friction_coeff <= 1.0:
            raise ValueError(f"{self.name}: friction coeff outside [0, 1]")
        if self.melting_point >= self.boiling_point:
            raise ValueError(f"{self.name}: melting point must be below boiling point")
        if not self.phase_names:
            self.phase_names = {s: f"{self.name} ({s})" for s in STATES}
        if set(self.phase_names) != set(STATES):
            raise ValueError(f"{self.name}: phase_names must cover solid/liquid/gas")

    def state_at(self, temperature: float) -> str:
        """State of matter at a temperature: solid below the melting point,
        liquid in [melting, boiling), gas at or above the boiling point."""
        if temperature < self.melting_point:
            return SOLID
        if temperature < self.boiling_point:
            return LIQUID
        return GAS

    def phase_name(self, state: str) -> str:
        return self.phase_names[state]


def _material_from_entry(name: str, entry: dict) -> Material:
    return Material(
        name=name,
        thermal_conduction_coeff=float(entry["conduction"]),
        melting_point=float(entry["melting_point"]),
        boiling_point=float(entry["boiling_point"]),
        combustion_point=(None if entry.get("combustion_point") in (None, "none")
                          else float(entry["combustion_point"])),
        electrically_conductive=bool(entry.get("conductive", False)),
        friction_coeff=float(entry.get("friction", 0.5)),
        phase_names=dict(entry.get("phases", {})) or {},
    )


def load_materials() -> dict[str, Material]:
    text = resources.files("sciencehouse.data").joinpath("materials.yaml").read_text()
    raw = yaml.safe_load(text)
    return {name: _material_from_entry(name, entry) for name, entry in raw.items()}
