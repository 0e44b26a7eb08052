"""A small paired benchmark: fresh random map per instance, both planners,
ratio statistics and the CSV/plot outputs.

Run from the repository root:  python3 demos/06_benchmark.py
(The table-scale configuration is 100x100 maps with 64 agents over 100
instances; pass it through the CLI when you have a few minutes:
  mapfkit bench --width 100 --height 100 --agents 64 --instances 100)
"""

from mapfkit import BenchConfig, emit_csv, emit_plot_data, run_benchmark

cfg = BenchConfig(n_agents=8, n_instances=10, seed=2, width=25, height=25, p_obstacle=0.1)
records, summary = run_benchmark(cfg)

print(f"{summary.successes} ok / {summary.failures} failed of {len(records)} instances\n")
print(f"{'metric':28s} {'avg':>8s} {'min':>8s} {'max':>8s} {'median':>8s}")
for name, stats in summary.columns.items():
    print(f"{name:28s} {stats.avg:8.4f} {stats.min:8.4f} {stats.max:8.4f} {stats.median:8.4f}")

csv_text = emit_csv(records)
print("\nfirst CSV lines:")
for line in csv_text.splitlines()[:3]:
    print(" ", line[:110] + ("..." if len(line) > 110 else ""))

plot_text = emit_plot_data(records)
print("\nplot-data head:")
for line in plot_text.splitlines()[:4]:
    print(" ", line)
