"""World entities: objects as bundles of property facets.

Every entity in the world is a SimObject: a typed thing with optional
container, device, electrical, life and plane facets. Facets are plain
mutable dataclasses; all behavior lives in the world and the engines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .materials import SOLID

ANODE = "anode"
CATHODE = "cathode"
TERMINAL_1 = "terminal 1"
TERMINAL_2 = "terminal 2"


@dataclass
class ContainerFacet:
    closeable: bool = False
    is_open: bool = True
    preposition: str = "in"  # "in" for enclosures, "on" for surfaces


@dataclass
class DeviceFacet:
    activated: bool = False
    broken: bool = False
    # only devices with an on/off affordance can be (de)activated by the agent
    switchable: bool = True
    activation_condition: Optional[str] = None  # e.g. "outside"
    heat_setpoint: Optional[float] = None       # heat source/sink target temp
    heat_rate: float = 0.0                      # convective per-tick fraction
    power_source: bool = False
    renewable: bool = False
    power_consumer: bool = False
    powered: bool = False
    powered_by: list[str] = field(default_factory=list)  # source type names
    spawns: Optional[str] = None                # substance type spawned per tick
    use_kind: Optional[str] = None              # thermometer/shovel/stopwatch
    activation_tick: Optional[int] = None


@dataclass
class Connection:
    own_terminal: str
    other_id: int
    other_terminal: str


@dataclass
class ElectricalFacet:
    polarized: bool = False
    connections: list[Connection] = field(default_factory=list)

    @property
    def terminals(self) -> tuple[str, str]:
        return (ANODE, CATHODE) if self.polarized else (TERMINAL_1, TERMINAL_2)

    def connection_at(self, terminal: str) -> Optional[Connection]:
        for conn in self.connections:
            if conn.own_terminal == terminal:
                return conn
        return None


@dataclass
class LifeFacet:
    species: str
    stage_index: int = 0
    ticks_in_stage: int = 0
    # need name -> ticks since last satisfied
    needs: dict[str, int] = field(default_factory=dict)
    dead: bool = False
    planted: bool = False


@dataclass
class PlaneFacet:
    angle: float = 45.0
    load_id: Optional[int] = None
    position: float = 0.0  # fraction of the way down, in [0, 1]
    elapsed_ticks: int = 0


@dataclass
class SimObject:
    id: int
    type_name: str
    material: Optional[str] = None
    temperature: float = 20.0
    state_of_matter: Optional[str] = None  # substances only
    portable: bool = False
    is_substance: bool = False
    name_prefix: str = ""                  # variant descriptor, e.g. wire colour
    container: Optional[ContainerFacet] = None
    device: Optional[DeviceFacet] = None
    electrical: Optional[ElectricalFacet] = None
    life: Optional[LifeFacet] = None
    plane: Optional[PlaneFacet] = None
    genotype: Optional[dict[str, tuple[str, str]]] = None  # trait -> allele pair
    edible: bool = False
    flushable: bool = False
    document_text: Optional[str] = None
    diggable: bool = False
    is_agent: bool = False
    is_door: bool = False
    door_to: Optional[str] = None          # room on the other side
    linked_door_id: Optional[int] = None
    burning: bool = False
    burn_ticks_left: int = 0
    pollen_from: Optional[dict] = None     # pollen genotype on a flower
    wilt_countdown: int = 0
    category: str = "object"               # catalog category for classification

    @property
    def is_container(self) -> bool:
        return self.container is not None

    @property
    def is_open(self) -> bool:
        return self.container is not None and self.container.is_open

    @property
    def solid(self) -> bool:
        return not self.is_substance or self.state_of_matter == SOLID
