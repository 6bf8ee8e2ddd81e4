"""Command-line entry point for figure rendering."""

import sys

import click

from .render import KINDS, PlotSpec, RenderError, render


@click.group()
def main():
    """Render experiment CSV files into figures."""


@main.command(name="render")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), required=True, help="Results CSV (or companion explain CSV).")
@click.option("--kind", type=click.Choice(list(KINDS)), required=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True, help="Output image path.")
@click.option("--band", type=click.Choice(["stddev"]), default=None, help="Draw a +/- one-stddev band around each mean line.")
def render_cmd(csv_path, kind, out_path, band):
    """Render one figure from a CSV file."""
    try:
        spec = PlotSpec(csv_path=csv_path, kind=kind, out_path=out_path, band=band)
        render(spec)
    except (RenderError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(f"wrote {out_path}")


if __name__ == "__main__":
    main()
