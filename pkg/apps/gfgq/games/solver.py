"""
Parity game solving (max-even).

`solve` is Zielonka's recursive algorithm on attractors; `brute_solve`
enumerates positional strategies and serves as its test oracle.
"""

from __future__ import annotations
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Set, Tuple

import networkx as nx

from core.config import settings
from core.errors import check_guard
from core.models import Player
from games.builder import ParityGame

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Solution:
    """Winning regions and positional winning strategies of both players."""
    regions: Mapping[Player, FrozenSet[int]]
    strategies: Mapping[Player, Mapping[int, int]]

    def winner(self, position: int) -> Player:
        return Player.ELOISE if position in self.regions[Player.ELOISE] else Player.ABELARD

    def move(self, position: int) -> Optional[int]:
        return self.strategies[self.winner(position)].get(position)

    def dump(self, game: ParityGame) -> str:
        """One line per position: index, name, winner and strategy move when owned."""
        lines = []
        for v in game.positions:
            who = self.winner(v)
            line = f"{v} {game.render(v)} winner={who.name.lower()}"
            if game.owner[v] is who and v in self.strategies[who]:
                line += f" move={self.strategies[who][v]}"
            lines.append(line)
        return "\n".join(lines)


def attractor(
    game: ParityGame, nodes: FrozenSet[int], target: Iterable[int], player: Player
) -> Tuple[FrozenSet[int], Dict[int, int]]:
    """
    Positions of the subgame `nodes` from which `player` forces a visit to
    `target`, with the forcing move of each attracted position they own.
    """
    attr: Set[int] = set(target) & nodes
    strategy: Dict[int, int] = {}
    remaining = {v: len({w for w in game.moves[v] if w in nodes}) for v in nodes}
    queue = deque(sorted(attr))
    while queue:
        w = queue.popleft()
        for v in game.predecessors[w]:
            if v not in nodes or v in attr:
                continue
            if game.owner[v] is player:
                attr.add(v)
                strategy[v] = w
                queue.append(v)
            else:
                remaining[v] -= 1
                if remaining[v] == 0:
                    attr.add(v)
                    queue.append(v)
    return frozenset(attr), strategy


_Result = Tuple[Dict[Player, Set[int]], Dict[Player, Dict[int, int]]]


def _zielonka(game: ParityGame, nodes: FrozenSet[int]) -> _Result:
    regions: Dict[Player, Set[int]] = {Player.ELOISE: set(), Player.ABELARD: set()}
    strategies: Dict[Player, Dict[int, int]] = {Player.ELOISE: {}, Player.ABELARD: {}}
    if not nodes:
        return regions, strategies
    top = max(game.priority[v] for v in nodes)
    player = Player(top % 2)
    opponent = player.opponent
    tops = {v for v in nodes if game.priority[v] == top}
    a, a_strategy = attractor(game, nodes, tops, player)
    sub_regions, sub_strategies = _zielonka(game, nodes - a)

    if not sub_regions[opponent]:
        regions[player] = set(nodes)
        strategies[player].update(sub_strategies[player])
        strategies[player].update(a_strategy)
        for v in sorted(tops):
            if game.owner[v] is player:
                strategies[player][v] = min(w for w in game.moves[v] if w in nodes)
        return regions, strategies

    b, b_strategy = attractor(game, nodes, sub_regions[opponent], opponent)
    rest_regions, rest_strategies = _zielonka(game, nodes - b)
    regions[player] = rest_regions[player]
    regions[opponent] = rest_regions[opponent] | b
    strategies[player].update(rest_strategies[player])
    strategies[opponent].update(rest_strategies[opponent])
    strategies[opponent].update(
        {v: w for v, w in sub_strategies[opponent].items() if v in sub_regions[opponent]}
    )
    strategies[opponent].update(b_strategy)
    return regions, strategies


def _restrict(regions, strategies, game: ParityGame) -> Solution:
    out_strategies = {}
    for p in (Player.ELOISE, Player.ABELARD):
        out_strategies[p] = {
            v: w for v, w in sorted(strategies[p].items())
            if v in regions[p] and game.owner[v] is p
        }
    return Solution(
        {p: frozenset(regions[p]) for p in (Player.ELOISE, Player.ABELARD)}, out_strategies
    )


def solve(game: ParityGame) -> Solution:
    solution = _restrict(*_zielonka(game, frozenset(game.positions)), game)
    logger.info(
        f"Solved game: Eloise wins {len(solution.regions[Player.ELOISE])}/{game.size} positions"
    )
    return solution


def _losing_positions(game: ParityGame, choice: Mapping[int, int], player: Player) -> Set[int]:
    """Positions from which the opponent reaches a cycle of their parity once `player` is fixed to `choice`."""
    g = nx.DiGraph()
    g.add_nodes_from(game.positions)
    for v in game.positions:
        succ = (choice[v],) if v in choice else game.moves[v]
        g.add_edges_from((v, w) for w in succ)
    bad: Set[int] = set()
    for p in sorted({x for x in game.priority if x % 2 != player.value}):
        sub = g.subgraph(v for v in game.positions if game.priority[v] <= p)
        for component in nx.strongly_connected_components(sub):
            cyclic = len(component) > 1 or any(sub.has_edge(v, v) for v in component)
            if cyclic and any(game.priority[v] == p for v in component):
                bad |= component
    losing = set(bad)
    for v in bad:
        losing |= nx.ancestors(g, v)
    return losing


def _brute_player(game: ParityGame, player: Player) -> Tuple[FrozenSet[int], Dict[int, int]]:
    owned = [v for v in game.positions if game.owner[v] is player]
    options = [sorted(set(game.moves[v])) for v in owned]
    winning: Set[int] = set()
    per_choice = []
    for picks in itertools.product(*options):
        choice = dict(zip(owned, picks))
        wins = set(game.positions) - _losing_positions(game, choice, player)
        winning |= wins
        per_choice.append((wins, choice))
    uniform = next(choice for wins, choice in per_choice if wins == winning)
    return frozenset(winning), {v: w for v, w in uniform.items() if v in winning}


def brute_solve(game: ParityGame, guard: Optional[int] = None) -> Solution:
    """
    Exact solution by enumerating the positional strategies of each player.

    Raises:
        GuardExceededError: more positions than the brute-force guard
    """
    check_guard("brute_force_positions", game.size, guard or settings.brute_force_positions)
    eloise, eloise_strategy = _brute_player(game, Player.ELOISE)
    _, abelard_strategy = _brute_player(game, Player.ABELARD)
    abelard = frozenset(game.positions) - eloise
    return Solution(
        {Player.ELOISE: eloise, Player.ABELARD: abelard},
        {
            Player.ELOISE: eloise_strategy,
            Player.ABELARD: {v: w for v, w in abelard_strategy.items() if v in abelard},
        },
    )
