"""Compare the two normal-bundle sign conventions for the exceptional divisor on
projective-space blow-ups, using the Euler characteristic as a referee.

With E|_E = O_E(-1) one has [E]^2 = -pi*[pt] on a surface. The top Chern class
of Bl_pt P^2 must then be 4, Bl_pt P^3 must give 6 and Bl_line P^3 must give 6.
The alternative closed forms are evaluated in the same ring for comparison.
"""
import argparse
from dataclasses import dataclass

from bcblow.blowup import BlowupRing, blowup_total_chern
from bcblow.manifest import PRESET_DIR, load_manifest


@dataclass
class Config:
    verbose: bool = False


CASES = [("surface-point", "P2-point", "h^2", 4), ("threefold-point", "P3-point", "h^3", 6),
         ("threefold-curve", "P3-line", "h^3", 6)]


def degree(cls, top):
    """Coefficient of pi*(top) after rewriting the top-degree slots through the formule-clef."""
    return cls.y.coefficient(cls.ring.ringY.parse_monomial(top))


def run(cfg: Config) -> None:
    for preset, key, top, euler in CASES:
        embed = load_manifest(PRESET_DIR / f"{preset}.json").embeddings[key]
        ring = BlowupRing(embed)
        total = blowup_total_chern(embed, ring)
        n = embed.n
        got = degree(total.component(n), top)
        print(f"{key}: top Chern number {got} (Euler characteristic {euler}) -> {'ok' if got == euler else 'MISMATCH'}")
        if preset == "surface-point":
            E = ring.E()
            printed = ring.pi_star(embed.tangentY) - E + E * E
            print(f"  with -[E] + [E]^2 instead: {degree(printed.component(2), top)}")
        if cfg.verbose:
            print(f"  c(Yt) = {total}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--verbose", action="store_true")
    run(Config(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
