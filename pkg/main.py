#!/usr/bin/env python3
"""
Main script for the catalog report: classification, deformation charts and
integral point counts of every embedded example.
"""

import os
import argparse
from typing import Any, Dict, List

import pandas as pd
from tqdm import tqdm

from src.coxeter import CoxeterMatrix, classify, refine
from src.data import CATALOG, catalog_names
from src.deform import cell_chart
from src.integral import enumeration_report
from src.polytope import is_truncation_polytope
from src.utils.basic_utils import get_project_root, load_config
from src.utils.conversion_utils import ConversionUtils
from src.utils.errors import Reducible, VinbergError


def parse_args() -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description='Run the catalog report')
    parser.add_argument('--config', type=str, default='config/vinberg_config.yaml', help='Configuration file')
    parser.add_argument('--output-dir', type=str, help='Output directory for results')
    parser.add_argument('--parallel', type=int, help='Worker threads for enumeration')
    parser.add_argument('--oracle', action='store_true', help='Cross-check every count with the direct search')
    parser.add_argument('--only', nargs='*', help='Restrict the report to these catalog entries')
    return parser.parse_args()


def update_config_with_args(config: Dict[str, Any], args: argparse.Namespace) -> Dict[str, Any]:
    """Update configuration with command line arguments."""
    if args.output_dir is not None:
        config['output']['output_dir'] = args.output_dir
    if args.parallel is not None:
        config['enumeration']['parallel'] = args.parallel
    if args.oracle:
        config['enumeration']['oracle'] = True
    return config


def _group_record(M: CoxeterMatrix) -> Dict[str, Any]:
    try:
        group = refine(M)
    except Reducible:
        group = classify(M, require_irreducible=False)
    return group.to_json()


def report_entry(name: str, config: Dict[str, Any]) -> Dict[str, Any]:
    """Everything the library can say about one catalog entry."""
    try:
        entry = CATALOG[name]
        obj = entry.build()
        record: Dict[str, Any] = {"name": name, "kind": entry.kind, "description": entry.description}
        if isinstance(obj, CoxeterMatrix):
            record["group"] = _group_record(obj)
            return record

        record.update({"dim": obj.dim, "facets": len(obj.facets), "e_plus": obj.e_plus})
        record["truncation_polytope"] = is_truncation_polytope(obj)
        try:
            record["chart"] = cell_chart(obj).to_json()
        except VinbergError as e:
            record["chart"] = {"error": type(e).__name__, "message": str(e)}
        if obj.dim < 3 or not record["truncation_polytope"]:
            return record
        opts = config['enumeration']
        try:
            report = enumeration_report(
                obj, parallel=opts['parallel'], oracle=opts['oracle'], quotient_symmetry=True
            )
            record["enumeration"] = report.to_json()
        except VinbergError as e:
            record["enumeration"] = {"error": type(e).__name__, "message": str(e)}
        return record
    except Exception as e:
        print(f"Error in report_entry: {str(e)}")
        raise


def summary_frame(records: List[Dict[str, Any]]) -> pd.DataFrame:
    """One row per entry for CSV export."""
    rows = []
    for r in records:
        chart = r.get("chart", {})
        enum = r.get("enumeration", {})
        rows.append({
            "name": r["name"],
            "kind": r["kind"],
            "dim": r.get("dim"),
            "e_plus": r.get("e_plus"),
            "class": r.get("group", {}).get("class"),
            "chart_case": chart.get("case", chart.get("error")),
            "chart_dimension": chart.get("dimension"),
            "count": enum.get("count", enum.get("error")),
            "quotient_count": enum.get("quotient_count"),
            "oracle_count": enum.get("oracle_count"),
            "shortcut": (enum.get("shortcut") or {}).get("kind"),
        })
    return pd.DataFrame(rows)


def save_results(records: List[Dict[str, Any]], output_dir: str) -> None:
    """Save the JSON report and the CSV summary."""
    try:
        os.makedirs(output_dir, exist_ok=True)
        json_path = os.path.join(output_dir, "catalog_report.json")
        with open(json_path, 'w') as f:
            f.write(ConversionUtils.dumps(records))
        csv_path = os.path.join(output_dir, "catalog_summary.csv")
        summary_frame(records).to_csv(csv_path, index=False)
        print(f"\nReport saved to {json_path} and {csv_path}")
    except Exception as e:
        print(f"Error in save_results: {str(e)}")
        raise


def main():
    """Main function to run the catalog report."""
    try:
        args = parse_args()

        project_root = get_project_root()
        print(f"Project root directory: {project_root}")

        config = update_config_with_args(load_config(args.config), args)
        output_dir = os.path.join(project_root, config['output']['output_dir'])

        names = args.only or catalog_names()
        print(f"\nReporting on {len(names)} catalog entries...")
        records = [report_entry(name, config) for name in tqdm(names, desc="catalog")]

        save_results(records, output_dir)
        print("\nCatalog report completed successfully!")

    except Exception as e:
        print(f"\nError: {str(e)}")
        raise


if __name__ == "__main__":
    main()
