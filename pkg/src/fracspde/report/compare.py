"""Compare two result documents and summarize the differences in Markdown."""

import logging
from pathlib import Path
from typing import Any, Dict, List

from deepdiff import DeepDiff

from fracspde.report.writer import load_document

logger = logging.getLogger(__name__)

DIFF_CATEGORIES = (
    "values_changed",
    "type_changes",
    "dictionary_item_added",
    "dictionary_item_removed",
    "iterable_item_added",
    "iterable_item_removed",
)


class Comparison:
    """Outcome of comparing two documents at a given precision."""

    def __init__(self, left: str, right: str, digits: int, diff: DeepDiff):
        self.left = left
        self.right = right
        self.digits = digits
        self.diff = diff

    @property
    def identical(self) -> bool:
        return not self.diff

    def changes(self) -> Dict[str, List[str]]:
        """Changed paths per DeepDiff category."""
        return {
            category: sorted(str(path) for path in self.diff[category])
            for category in DIFF_CATEGORIES
            if category in self.diff
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "left": self.left,
            "right": self.right,
            "digits": self.digits,
            "identical": self.identical,
            "changes": self.changes(),
        }


def compare_documents(
    left: Dict[str, Any], right: Dict[str, Any], digits: int = 10, ignore_provenance: bool = True
) -> DeepDiff:
    """
    DeepDiff of two documents, floats compared to `digits` significant digits.

    The provenance header is left out unless ignore_provenance is False.
    """
    if ignore_provenance:
        left = {k: v for k, v in left.items() if k != "provenance"}
        right = {k: v for k, v in right.items() if k != "provenance"}
    return DeepDiff(
        left,
        right,
        significant_digits=digits,
        number_format_notation="e",
        ignore_numeric_type_changes=True,
        verbose_level=2,
    )


def compare_files(left_file: Path, right_file: Path, digits: int = 10) -> Comparison:
    """Load and compare two JSON result files."""
    diff = compare_documents(load_document(left_file), load_document(right_file), digits)
    comparison = Comparison(str(left_file), str(right_file), digits, diff)
    logger.info(f"Compared {left_file} with {right_file}: {'identical' if comparison.identical else 'different'}")
    return comparison


def _shorten(value: Any, width: int = 60) -> str:
    text = str(value)
    return text if len(text) <= width else text[: width - 3] + "..."


def markdown_summary(comparison: Comparison) -> str:
    """Markdown report of a comparison."""
    lines = [
        "# fracspde Run Comparison",
        "",
        f"**Left:** `{comparison.left}`",
        f"**Right:** `{comparison.right}`",
        f"**Significant digits:** {comparison.digits}",
        "",
    ]
    if comparison.identical:
        lines.extend(["No differences.", ""])
        return "\n".join(lines)

    changes = comparison.changes()
    lines.extend(["## Summary", ""])
    lines.extend(f"- **{category}:** {len(paths)}" for category, paths in changes.items())
    lines.append("")

    values = comparison.diff.get("values_changed", {})
    if values:
        lines.extend(["## Changed Values", "", "| Path | Left | Right |", "|------|------|-------|"])
        for path in sorted(values):
            change = values[path]
            lines.append(
                f"| `{path}` | {_shorten(change['old_value'])} | {_shorten(change['new_value'])} |"
            )
        lines.append("")

    for category in DIFF_CATEGORIES[1:]:
        if category in changes:
            lines.extend([f"## {category}", ""])
            lines.extend(f"- `{path}`" for path in changes[category])
            lines.append("")
    return "\n".join(lines)
