from PROB_TAYLOR.components.bohm import compare_approximants, pt_approximant
from PROB_TAYLOR.components.syntax import parse_lambda, print_term
from PROB_TAYLOR.components.taylor import explicit_taylor, generic_taylor, taylor_nf
from PROB_TAYLOR.entity.config import TruncationBudget
from PROB_TAYLOR.logger import console

budget = TruncationBudget(8, 3)

for text in (r"Delta (I (+1/2) Omega)", r"Delta I"):
    normal, residual = taylor_nf(parse_lambda(text), budget, 16)
    console.print(f"{text}  ->  {print_term(normal)}  (residual {residual})", markup=False)

M, N = parse_lambda("x (+1/2) y"), parse_lambda("y (+1/2) x")
console.print("explicit expansions equal:", explicit_taylor(M, budget) == explicit_taylor(N, budget))
console.print("generic expansions equal:", generic_taylor(M, budget) == generic_taylor(N, budget))
console.print("Böhm approximants:", compare_approximants(pt_approximant(M, 2, 8), pt_approximant(N, 2, 8)).value)
