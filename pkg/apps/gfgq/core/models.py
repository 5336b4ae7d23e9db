"""
Pydantic models and enums shared across gfgq.

Report-level objects (classification, statistics, verdicts) live here; the
logical and automata data structures live in their own packages.
"""

from __future__ import annotations
from pydantic import BaseModel, ConfigDict, Field
from typing import Any, Dict, FrozenSet, List, Optional
from enum import Enum


class QuantifierKind(str, Enum):
    """Existential quantifiers belong to Eloise, universal ones to Abelard."""
    EXISTS = "E"
    FORALL = "A"

    @property
    def dual(self) -> "QuantifierKind":
        return QuantifierKind.FORALL if self is QuantifierKind.EXISTS else QuantifierKind.EXISTS


class AlternationFlag(str, Enum):
    """Which player picks the set (first letter) and which the element."""
    EA = "ea"
    AE = "ae"

    @property
    def dual(self) -> "AlternationFlag":
        return AlternationFlag.AE if self is AlternationFlag.EA else AlternationFlag.EA

    def is_coherent(self, kind: QuantifierKind) -> bool:
        """A quantifier is coherent with the flag when its player picks the set."""
        if self is AlternationFlag.EA:
            return kind is QuantifierKind.EXISTS
        return kind is QuantifierKind.FORALL


class EvolutionMode(str, Enum):
    """Plain evolution or the selection-map normal evolution."""
    EV = "ev"
    NEV = "nev"


class Player(int, Enum):
    """Parity-game players; the value is the parity each one wants."""
    ELOISE = 0
    ABELARD = 1

    @property
    def opponent(self) -> "Player":
        return Player.ABELARD if self is Player.ELOISE else Player.ELOISE


class DecisionMode(str, Enum):
    """Which decision procedure produced a verdict."""
    SAT_BEHAVIORAL = "sat_behavioral"
    SAT_VANILLA = "sat_vanilla"
    MC_UNIVERSAL = "mc_universal"
    MC_EXISTENTIAL = "mc_existential"


class CheckMode(str, Enum):
    """Model-checking quantification over the traces of a structure."""
    UNIVERSAL = "universal"
    EXISTENTIAL = "existential"


class Answer(str, Enum):
    YES = "YES"
    NO = "NO"


class Classification(BaseModel):
    """Structural predicates of a formula."""
    model_config = ConfigDict(frozen=True)

    is_prenex: bool
    is_behavioral: bool
    is_strongly_behavioral: bool
    is_vanilla: bool
    free_props: FrozenSet[str] = Field(default_factory=frozenset)
    quantified_props: FrozenSet[str] = Field(default_factory=frozenset)

    @property
    def is_closed(self) -> bool:
        return not self.free_props

    def to_lines(self) -> List[str]:
        """key=value rendering used by the CLI `parse` verb."""
        return [
            f"prenex={str(self.is_prenex).lower()}",
            f"behavioral={str(self.is_behavioral).lower()}",
            f"strongly_behavioral={str(self.is_strongly_behavioral).lower()}",
            f"vanilla={str(self.is_vanilla).lower()}",
            f"free={' '.join(sorted(self.free_props))}",
            f"quantified={' '.join(sorted(self.quantified_props))}",
        ]


class PipelineStatistics(BaseModel):
    """Sizes and timings collected along a decision pipeline."""
    nba_states: int = 0
    automaton_states: int = 0
    game_positions: int = 0
    priorities: int = 0
    millis: Dict[str, float] = Field(default_factory=dict)

    @property
    def total_millis(self) -> float:
        return round(sum(self.millis.values()), 3)


REPORT_FORMAT_VERSION = 1


class Verdict(BaseModel):
    """Answer of a decision procedure, with optional witness transducer."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    answer: Answer
    mode: DecisionMode
    witness: Optional[Any] = Field(None, description="Transducer for YES behavioral verdicts")
    statistics: PipelineStatistics = Field(default_factory=PipelineStatistics)

    @property
    def holds(self) -> bool:
        return self.answer is Answer.YES

    def to_report(self) -> List[str]:
        """Machine-readable key=value lines."""
        stats = self.statistics
        return [
            f"format_version={REPORT_FORMAT_VERSION}",
            f"answer={self.answer.value}",
            f"mode={self.mode.value}",
            f"nba_states={stats.nba_states}",
            f"automaton_states={stats.automaton_states}",
            f"game_positions={stats.game_positions}",
            f"priorities={stats.priorities}",
            f"millis={stats.total_millis}",
        ]
