"""A min-plus inequality system read as a mean payoff game.

    python demos/games.py
"""

from tropsatz.core import INF, format_value
from tropsatz.game import build_game, min_credits, solve_nonstrict, winners
from tropsatz.linsys import MinPlusSystem, TropMatrix


def main():
    A = TropMatrix.from_dense([[INF, 2, 2], [2, 1, 2], [1, INF, INF]])
    B = TropMatrix.from_dense([[INF, -1, 0], [INF, -1, 2], [2, 2, 1]])
    S = MinPlusSystem(A, B)
    G = build_game(S)
    for (kind, k), who in sorted(winners(G).items()):
        print(f"{'row' if kind == 'r' else 'col'} {k}: {who}")
    print("credits:", [format_value(v) for v in min_credits(G).cols])
    for need in ([0], [1]):
        x = solve_nonstrict(S, need)
        print(f"solution finite at {need}:", x and [format_value(v) for v in x])


if __name__ == "__main__":
    main()
