"""
Human-readable reports

Handles:
- Plain-text invariant reports
- The verify-paper pass/fail table
- Markdown summaries of Question-1 scans
"""
import logging
from pathlib import Path
from typing import Any, Optional, Sequence

from jinja2 import Environment, FileSystemLoader, StrictUndefined, TemplateError

from app.exceptions import LatticeToolError

logger = logging.getLogger(__name__)

# Template directory
TEMPLATE_DIR = Path(__file__).parent.parent / "templates"


class ReportRenderingError(LatticeToolError):
    """Error while rendering a report template."""

    pass


def format_polynomial(coefficients: Sequence[int], var: str = "t") -> str:
    """Ascending coefficients as ``1 + 3t + 11t^2``; the zero polynomial is ``0``."""
    terms = []
    for k, c in enumerate(coefficients):
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            coeff = "" if abs(c) == 1 else str(abs(c))
            body = f"{coeff}{var}" + (f"^{k}" if k > 1 else "")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class ReportRenderer:
    """Renders result dictionaries through the Jinja2 templates."""

    def __init__(self, template_dir: Optional[Path] = None):
        """
        Args:
            template_dir: Path to Jinja2 templates (uses default if not provided)
        """
        self.template_dir = template_dir or TEMPLATE_DIR
        self._env: Optional[Environment] = None

    @property
    def env(self) -> Environment:
        """Get or create Jinja2 environment."""
        if self._env is None:
            self._env = Environment(
                loader=FileSystemLoader(self.template_dir),
                autoescape=False,
                undefined=StrictUndefined,
                trim_blocks=True,
                lstrip_blocks=True,
                keep_trailing_newline=True,
            )
            self._env.filters["poly"] = format_polynomial
            self._env.filters["mark"] = self._mark
        return self._env

    @staticmethod
    def _mark(value: Any) -> str:
        if value is None:
            return "-"
        return "yes" if value else "no"

    def _render(self, name: str, **context: Any) -> str:
        try:
            return self.env.get_template(name).render(**context)
        except TemplateError as e:
            logger.error(f"Template rendering failed: {e}")
            raise ReportRenderingError(f"Failed to render template {name}: {e}") from e

    def render_invariants(self, report: dict[str, Any]) -> str:
        return self._render("invariants.txt.j2", r=report)

    def render_suite(self, suite: dict[str, Any]) -> str:
        """The golden table: one verdict line per case, then mismatches."""
        return self._render("verify_paper.txt.j2", suite=suite)

    def render_question1(self, report: dict[str, Any]) -> str:
        return self._render("question1.md.j2", r=report)
