"""Chern classes of blow-ups for the named embeddings, degree by degree, with every check suite."""
import argparse
from dataclasses import dataclass, field
from typing import List

from bcblow.blowup import (BlowupRing, appendix_suite, blowup_chern_character, blowup_total_chern,
                           eq_426_431_suite, point_center_text, theorem_components)
from bcblow.presets import NAMED, named_embedding


@dataclass
class Config:
    presets: List[str] = field(default_factory=lambda: sorted(NAMED) + ["iwasawa"])
    suites: bool = True


def run(cfg: Config) -> None:
    for name in cfg.presets:
        embed = named_embedding(name)
        ring = BlowupRing(embed)
        total = blowup_total_chern(embed, ring)
        diff = total - ring.pi_star(embed.tangentY)
        print(f"== {name}: n={embed.n} r={embed.r}")
        for k in range(1, embed.n + 1):
            print(f"  c_{k}(Yt) - pi*c_{k}(Y) = {diff.component(k)}")
        text = point_center_text(diff)
        if text:
            print(f"  in terms of E: {text}")
        if cfg.suites:
            for report in (theorem_components(embed), eq_426_431_suite(embed), appendix_suite(embed),
                           blowup_chern_character(embed)):
                print("  " + str(report).replace("\n", "\n  "))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--presets", nargs="*", default=Config().presets)
    ap.add_argument("--no-suites", action="store_true")
    args = ap.parse_args()
    run(Config(presets=args.presets, suites=not args.no_suites))


if __name__ == "__main__":
    main()
