"""DOT rendering of parity games: circles for Eloise, boxes for Abelard."""

from __future__ import annotations
from typing import Optional

from core.models import Player
from games.builder import ParityGame
from games.solver import Solution


def to_dot(game: ParityGame, solution: Optional[Solution] = None, name: str = "game") -> str:
    lines = [f"digraph {name} {{", '  init [shape=point, label=""];']
    for v in game.positions:
        shape = "circle" if game.owner[v] is Player.ELOISE else "box"
        attrs = [f"shape={shape}", f'label="{game.render(v)}\\n{game.priority[v]}"']
        if v in game.observables:
            attrs.append("peripheries=2")
        if solution is not None:
            color = "blue" if solution.winner(v) is Player.ELOISE else "red"
            attrs.append(f"color={color}")
        lines.append(f"  n{v} [{', '.join(attrs)}];")
    lines.append(f"  init -> n{game.initial};")
    for v in game.positions:
        chosen = solution.move(v) if solution is not None else None
        for w in sorted(set(game.moves[v])):
            style = " [style=bold]" if w == chosen and game.owner[v] is solution.winner(v) else ""
            lines.append(f"  n{v} -> n{w}{style};")
    lines.append("}")
    return "\n".join(lines)
