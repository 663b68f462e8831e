"""Bott-Chern numbers of the Iwasawa manifold and the curve blow-up check."""
import argparse
import json
from dataclasses import dataclass

from bcblow.nilbc import bc_table, format_table, is_bc_exact, iwasawa, iwasawa_blowup_check, monomial, torus


@dataclass
class Config:
    torus_dim: int = 3
    json: bool = False


def run(cfg: Config) -> dict:
    se = iwasawa()
    out = {
        "iwasawa": {f"{p},{q}": v for (p, q), v in sorted(bc_table(se).items())},
        "torus": {f"{p},{q}": v for (p, q), v in sorted(bc_table(torus(cfg.torus_dim)).items())},
        "w12|12": str(is_bc_exact(se, monomial(3, (1, 2), (1, 2)))),
        "blowup": iwasawa_blowup_check().to_json(),
    }
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--torus-dim", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    cfg = Config(**vars(ap.parse_args()))
    out = run(cfg)
    if cfg.json:
        print(json.dumps(out, indent=1, sort_keys=True))
        return
    se = iwasawa()
    print("Iwasawa h^{p,q}_BC")
    print(format_table(bc_table(se), 3))
    print(f"\ntorus-{cfg.torus_dim} h^{{p,q}}_BC")
    print(format_table(bc_table(torus(cfg.torus_dim)), cfg.torus_dim))
    print(f"\nw^{{12|12}}: {out['w12|12']}\n")
    print(iwasawa_blowup_check())


if __name__ == "__main__":
    main()
