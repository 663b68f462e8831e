"""Print coefficient tables of the RR-without-denominators series f(U; V)."""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from bcblow.rrwd import compute_f, defining_identity_holds, expected_constant_term


@dataclass
class Config:
    u_max: int = 3
    v_max: int = 3
    degree: int = 3
    json: bool = False


def run(cfg: Config) -> list:
    rows = []
    for u in range(1, cfg.u_max + 1):
        for v in range(0, cfg.v_max + 1):
            start = time.perf_counter()
            f = compute_f(u, v, cfg.degree)
            rows.append({
                "u": u, "v": v, "terms": len(f.coeffs), "constant": f.constant_term(),
                "expected_constant": expected_constant_term(u, v),
                "identity": defining_identity_holds(f),
                "seconds": round(time.perf_counter() - start, 3),
                "f": str(f),
            })
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, value in asdict(Config()).items():
        kind = (lambda s: s.lower() in ("1", "true", "yes")) if isinstance(value, bool) else type(value)
        ap.add_argument(f"--{name.replace('_', '-')}", type=kind, default=value)
    cfg = Config(**vars(ap.parse_args()))
    rows = run(cfg)
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=1))
        return
    for row in rows:
        print(f"u={row['u']} v={row['v']}  f0={row['constant']} (expected {row['expected_constant']})  "
              f"identity={row['identity']}  terms={row['terms']}  {row['seconds']}s")
        print(f"    f = {row['f']}")


if __name__ == "__main__":
    main()
