"""
Data processing and storage module for the type-2 convolution toolkit.
Handles JSON and CSV export of truth values, cut families, sampled
convolutions and harness reports, and loading them back.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import pandas as pd

from harness import AxiomReport, NecessityWitness
from interval_cuts import CutFamily
from truth_value import TruthValue


PathLike = Union[str, Path]


class DataException(Exception):
    """Custom exception for data loading errors."""
    pass


class DataProcessor:
    """
    Writes and reads the toolkit's machine-readable outputs.

    JSON output carries no timestamps and keeps key order, so identical
    runs produce identical files.
    """

    def __init__(self, config: Dict):
        """
        Initialize the data processor.

        Args:
            config: The output section of the configuration
        """
        self.config = config
        self.output_directory = Path(config.get('directory', './t2conv_output'))
        self.default_format = config.get('format', 'json')
        self.logger = logging.getLogger(__name__)

    def export_json(self, output_path: PathLike, payload: Any) -> bool:
        """
        Export a JSON-serializable payload.

        Args:
            output_path: Output file path
            payload: Dict or list built from to_dict() values

        Returns:
            True if export successful, False otherwise
        """
        try:
            output_path = Path(output_path)
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, 'w', encoding='utf-8') as f:
                json.dump(payload, f, indent=2, ensure_ascii=False)
                f.write('\n')
            self.logger.info(f"Exported JSON to {output_path}")
            return True
        except (OSError, TypeError, ValueError) as e:
            self.logger.error(f"Failed to export to JSON: {e}")
            return False

    def export_csv(self, output_path: PathLike,
                   data: Union[pd.DataFrame, Sequence[Dict]]) -> bool:
        """
        Export a table to CSV through pandas.

        Args:
            output_path: Output file path
            data: DataFrame or list of row dicts

        Returns:
            True if export successful, False otherwise
        """
        try:
            frame = data if isinstance(data, pd.DataFrame) else pd.DataFrame(list(data))
            if frame.empty:
                self.logger.warning("No rows to export")
                return False
            output_path = Path(output_path)
            output_path.parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(output_path, index=False, encoding='utf-8')
            self.logger.info(f"Exported {len(frame)} rows to {output_path}")
            return True
        except (OSError, ValueError) as e:
            self.logger.error(f"Failed to export to CSV: {e}")
            return False

    def load_json(self, input_path: PathLike) -> Any:
        """
        Load a JSON document.

        Raises:
            DataException: When the file is missing or not valid JSON
        """
        try:
            with open(input_path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except FileNotFoundError:
            raise DataException(f"File not found: {input_path}")
        except json.JSONDecodeError as e:
            raise DataException(f"Invalid JSON in {input_path}: {e}")
        except OSError as e:
            raise DataException(f"Cannot read {input_path}: {e}")
        self.logger.debug(f"Loaded {input_path}")
        return data

    def load_truth_value(self, input_path: PathLike) -> TruthValue:
        return TruthValue.from_dict(self.load_json(input_path))

    def load_cut_family(self, input_path: PathLike) -> CutFamily:
        return CutFamily.from_dict(self.load_json(input_path))

    def load_witness(self, input_path: PathLike) -> NecessityWitness:
        return NecessityWitness.from_dict(self.load_json(input_path))

    def load_reports(self, input_path: PathLike) -> List[AxiomReport]:
        data = self.load_json(input_path)
        items = data.get('reports') if isinstance(data, dict) else data
        if not isinstance(items, list):
            raise DataException(f"{input_path}: expected a list of reports")
        return [AxiomReport.from_dict(item) for item in items]

    def export_reports(self, output_path: PathLike, reports: Sequence[AxiomReport],
                       meta: Dict = None) -> bool:
        payload = dict(meta or {})
        payload['reports'] = [r.to_dict() for r in reports]
        return self.export_json(output_path, payload)


def reports_frame(reports: Sequence[AxiomReport]) -> pd.DataFrame:
    """One row per law: law, trials, failures, passed."""
    return pd.DataFrame([
        {'law': r.law, 'trials': r.trials, 'failures': r.failures, 'passed': r.passed}
        for r in reports
    ], columns=['law', 'trials', 'failures', 'passed'])
