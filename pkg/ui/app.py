"""
Gradio dashboard for the conjecture checker

3 tabs:
- Check: paste graph6 lines (or use the fixtures), run the pipeline, view records
- Generate: random regular graphs in graph6
- Bounds: Theorem 1 factor and the large-degree threshold verdict
"""

import io
import json
import logging
import sys
from pathlib import Path

import gradio as gr


def get_project_root() -> Path:
    """Get project root (works for both dev and frozen exe)"""
    if getattr(sys, 'frozen', False):
        return Path(sys.executable).parent
    return Path(__file__).parent.parent


# Add project root to path
project_root = get_project_root()
sys.path.insert(0, str(project_root))

from config.default_config import load_config
from engine.core import METHODS, ConjectureEngine, RunConfig, joos_threshold, run_gen
from engine.errors import DomcheckError
from engine.report import fraction_str
from engine.schemes import theorem1_bound

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s [%(name)s] %(levelname)s: %(message)s"
)
logger = logging.getLogger(__name__)

# ========== Global State ==========

config = load_config()

TABLE_COLUMNS = ["graph_id", "n", "delta", "gamma", "gamma_e", "ratio", "holds", "t1d", "t2", "t3", "violations"]

CUSTOM_CSS = """
.verdict-card {
    border: 1px solid #333;
    border-radius: 8px;
    padding: 12px;
    margin: 8px 0;
}
"""


# ========== Check Handlers ==========

def _row(record) -> list:
    data = record.to_dict()
    holds = data["conjecture_holds"]
    return [
        data["graph_id"],
        data["n"],
        "" if data["delta"] is None else data["delta"],
        data["gamma"],
        data["gamma_e"],
        data["ratio_exact"] or "",
        "n/a" if holds is None else ("yes" if holds else "NO"),
        data["t1_derand"] if data["t1_derand"] is not None else "",
        data["t2"] if data["t2"] is not None else "",
        data["t3"] if data["t3"] is not None else "",
        ", ".join(v["name"] for v in data["violations"]),
    ]


def check_graphs(text: str, use_fixtures: bool, methods: list, trials: int, seed: int):
    """Run the pipeline on pasted graph6 lines; returns (summary markdown, table rows, jsonl)"""
    max_graphs = config.get("ui", {}).get("max_graphs", 200)
    try:
        run_config = RunConfig.from_config(
            config,
            input="<dashboard>" if text.strip() else None,
            fixtures=bool(use_fixtures) or None,
            methods=tuple(methods) if methods else None,
            trials=int(trials),
            seed=int(seed),
            jobs=1,
        )
    except DomcheckError as e:
        return f"❌ {e}", [], ""

    engine = ConjectureEngine(run_config)
    stream = io.BytesIO(text.encode("ascii", errors="replace"))
    rows, lines = [], []
    for i, record in enumerate(engine.run(engine.iter_inputs(stream))):
        if i >= max_graphs:
            logger.warning(f"dashboard limit of {max_graphs} graphs reached")
            break
        rows.append(_row(record))
        lines.append(json.dumps(record.to_dict(), ensure_ascii=False))

    summary = engine.summary.to_dict()
    verdict = {0: "✅ clean", 2: "❌ counterexample found", 3: "⚠️ certificate violation"}[summary["exit_code"]]
    text_summary = f"""### {verdict}

| | |
|---|---|
| graphs checked | {summary['records']} |
| skipped lines | {summary['skipped']} |
| regular / cubic | {summary['regular']} / {summary['cubic']} |
| min ratio (regular) | {summary['min_ratio'] or '-'} |
| max ratio (regular) | {summary['max_ratio'] or '-'} |
| counterexamples | {len(summary['counterexamples'])} |
| certificate violations | {len(summary['certificate_violations'])} |
"""
    return text_summary, rows, "\n".join(lines)


# ========== Generate Handlers ==========

def generate_graphs(n: int, delta: int, count: int, seed: int) -> str:
    try:
        retry_limit = config.get("generator", {}).get("retry_limit", 10_000)
        records = run_gen(int(n), int(delta), int(count), int(seed), retry_limit)
        return "\n".join(r.decode("ascii") for r in records)
    except DomcheckError as e:
        return f"# error: {e}"


# ========== Bounds Handlers ==========

def bound_info(delta: int) -> str:
    delta = int(delta)
    if delta < 1:
        return "❌ delta must be at least 1"
    factor = theorem1_bound(delta)
    verdict = joos_threshold(delta)
    return f"""### Δ = {delta}

| | |
|---|---|
| Theorem 1 factor | {fraction_str(factor)} ≈ {float(factor):.6f} |
| (1 + ln(Δ+1)) / (Δ+1) | {verdict.lhs} |
| Δ / (4Δ − 2) | {verdict.rhs} |
| threshold holds | {'yes' if verdict.holds else 'no'} (certified at {verdict.precision} bits) |
"""


# ========== UI Layout ==========

def create_app():
    """Create Gradio app"""
    check_defaults = config.get("check", {})

    with gr.Blocks(title="domcheck", css=CUSTOM_CSS) as app:
        gr.Markdown("# domcheck\n*γ(G) ≤ γ_e(G) for regular graphs: exact solvers and constructive certificates*")

        with gr.Tabs():
            # ========== Tab 1: Check ==========
            with gr.TabItem("🔍 Check"):
                with gr.Row():
                    with gr.Column(scale=2):
                        graph6_input = gr.Textbox(
                            label="graph6 (one per line)",
                            placeholder="C~\nEFz_",
                            lines=10,
                        )
                        fixtures_box = gr.Checkbox(label="include fixtures", value=True)
                    with gr.Column(scale=1):
                        methods_box = gr.CheckboxGroup(
                            choices=list(METHODS),
                            value=list(check_defaults.get("methods", METHODS)),
                            label="methods",
                        )
                        trials_input = gr.Number(value=min(check_defaults.get("trials", 10_000), 2000), label="Monte Carlo trials", precision=0)
                        seed_input = gr.Number(value=check_defaults.get("seed", 0), label="seed", precision=0)
                        check_btn = gr.Button("Run check", variant="primary")

                summary_display = gr.Markdown(elem_classes=["verdict-card"])
                records_table = gr.Dataframe(headers=TABLE_COLUMNS, interactive=False)
                with gr.Accordion("JSON lines", open=False):
                    jsonl_output = gr.Code(language="json")

                check_btn.click(
                    check_graphs,
                    inputs=[graph6_input, fixtures_box, methods_box, trials_input, seed_input],
                    outputs=[summary_display, records_table, jsonl_output],
                )

            # ========== Tab 2: Generate ==========
            with gr.TabItem("🎲 Generate"):
                with gr.Row():
                    n_input = gr.Number(value=10, label="n", precision=0)
                    delta_input = gr.Number(value=3, label="Δ", precision=0)
                    count_input = gr.Number(value=5, label="count", precision=0)
                    gen_seed_input = gr.Number(value=0, label="seed", precision=0)
                gen_btn = gr.Button("Generate", variant="primary")
                gen_output = gr.Textbox(label="graph6", lines=10)

                gen_btn.click(
                    generate_graphs,
                    inputs=[n_input, delta_input, count_input, gen_seed_input],
                    outputs=[gen_output],
                )

            # ========== Tab 3: Bounds ==========
            with gr.TabItem("📐 Bounds"):
                bound_delta = gr.Slider(minimum=1, maximum=100, step=1, value=13, label="Δ")
                bound_display = gr.Markdown(elem_classes=["verdict-card"])
                bound_delta.change(bound_info, inputs=[bound_delta], outputs=[bound_display])
                app.load(bound_info, inputs=[bound_delta], outputs=[bound_display])

    app.queue(default_concurrency_limit=1)
    return app


# ========== Entry Point ==========

def main():
    """Launch the application"""
    app = create_app()
    ui_config = config.get("ui", {})
    host = ui_config.get("host", "127.0.0.1")
    first_port = ui_config.get("port", 7860)

    # Try four consecutive ports
    for port in range(first_port, first_port + 4):
        try:
            app.launch(
                server_name=host,
                server_port=port,
                share=False,
                inbrowser=True,
            )
            break
        except OSError:
            logger.warning(f"Port {port} in use, trying next...")
            continue


if __name__ == "__main__":
    main()
