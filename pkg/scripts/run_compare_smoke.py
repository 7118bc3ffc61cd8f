"""Smoke run of the compare pipeline on two pairs of terms.

Prints the verdicts of every stage; needs no configuration beyond
config/engine.yaml.
"""

from PROB_TAYLOR.entity.config import EngineConfig
from PROB_TAYLOR.pipeline.compare import ComparePipeline


def main():
    pipeline = ComparePipeline(EngineConfig(size_bound=8, copies=3, fuel=16, depth=2))
    for left, right in (("x (+1/2) y", "y (+1/2) x"), ("I", "I (+1/2) Omega")):
        artifact = pipeline.run_pipeline(left, right)
        print(f"{left}  vs  {right}")
        print("  generic Taylor equal:", artifact.generic_taylor_equal)
        print("  explicit Taylor equal:", artifact.explicit_taylor_equal)
        print("  Taylor normal forms:", artifact.taylor_nf.value)
        print("  Böhm approximants:", artifact.bohm.value)
        print("  separating test:", artifact.separating_test)


if __name__ == "__main__":
    main()
