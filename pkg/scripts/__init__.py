import os

from importlib import import_module


os.environ["NO_LOCAL_ASHG"] = "TRUE"

ashg_entrypoint          = import_module("scripts.ashg-cli").main
ashg_generate_entrypoint = import_module("scripts.ashg-generate").main
ashg_solve_entrypoint    = import_module("scripts.ashg-solve").main
ashg_evaluate_entrypoint = import_module("scripts.ashg-evaluate").main
ashg_bench_entrypoint    = import_module("scripts.ashg-bench").main
ashg_oracle_entrypoint   = import_module("scripts.ashg-oracle").main

del import_module, os
