"""
Export Module
Writes JSON documents, catalog summaries to Excel and certification reports to Word
"""

import json
import logging
import os
import tempfile
from typing import Optional, Sequence

from docx import Document
from docx.shared import Pt
from openpyxl import Workbook
from openpyxl.styles import Font, PatternFill

from .verifier import FLAG_NAMES, CatalogRow, VerificationReport


logger = logging.getLogger(__name__)


def to_json_text(data) -> str:
    """Canonical JSON text (sorted keys, fixed indentation, trailing newline)"""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


class ExportManager:
    """Manages export of reports, automaton dumps and catalog runs"""

    def __init__(self, output_dir: Optional[str] = None):
        """
        Args:
            output_dir: Directory that relative output paths are resolved
                        against (defaults to the working directory)
        """
        self.output_dir = output_dir

    def _resolve(self, path: str) -> str:
        if self.output_dir is not None and not os.path.isabs(path):
            path = os.path.join(self.output_dir, path)
        parent = os.path.dirname(os.path.abspath(path))
        os.makedirs(parent, exist_ok=True)
        return path

    def export_json(self, data, output_path: str) -> str:
        """
        Save a JSON document using atomic write

        Raises:
            RuntimeError: if the file could not be written
        """
        output_path = self._resolve(output_path)
        fd, temp_path = tempfile.mkstemp(dir=os.path.dirname(os.path.abspath(output_path)),
                                         suffix='.json.tmp')
        try:
            with os.fdopen(fd, 'w', encoding='utf-8') as f:
                f.write(to_json_text(data))
            os.replace(temp_path, output_path)
        except Exception as e:
            if os.path.exists(temp_path):
                try:
                    os.remove(temp_path)
                except OSError:
                    pass  # Best effort cleanup
            raise RuntimeError(f"Failed to save JSON to {output_path}: {str(e)}")
        logger.info(f"JSON written to {output_path}")
        return output_path

    def export_catalog_to_excel(self, rows: Sequence[CatalogRow], output_path: str) -> str:
        """
        One worksheet row per catalog entry with its sizes and every flag

        Returns:
            Path to the workbook
        """
        output_path = self._resolve(output_path)
        wb = Workbook()
        ws = wb.active
        ws.title = "Catalog"

        headers = ['Entry', 'Order', 'Table', 'Status', 'In ER', '|C_ER|', '|F|', '|G|', '|Q|', '|T|',
                   'Max pointlikes'] + list(FLAG_NAMES)
        for col, header in enumerate(headers, start=1):
            cell = ws.cell(row=1, column=col, value=header)
            cell.font = Font(bold=True)
            cell.fill = PatternFill(start_color="CCCCCC", end_color="CCCCCC", fill_type="solid")
        ws.freeze_panes = "A2"

        for r, row in enumerate(rows, start=2):
            status = "ok" if row.ok else (row.failure or "violation")
            values = [row.entry_id, row.order, ";".join(" ".join(map(str, t)) for t in row.table), status]
            report = row.report
            if report is not None:
                values += [report.is_in_ER, report.complex_size, report.fixed_size, report.group_order,
                           report.state_count, report.transition_size, " ".join(report.max_pointlikes)]
                values += [report.flags[name] for name in FLAG_NAMES]
            else:
                values += [None] * 6 + [row.detail]
            for col, value in enumerate(values, start=1):
                ws.cell(row=r, column=col, value=value)

        for column in ws.columns:
            width = max(len(str(cell.value)) if cell.value is not None else 0 for cell in column)
            ws.column_dimensions[column[0].column_letter].width = min(width + 2, 50)

        wb.save(output_path)
        logger.info(f"Catalog summary with {len(rows)} entries written to {output_path}")
        return output_path

    def _set_cell_font_size(self, cell, size=9):
        for paragraph in cell.paragraphs:
            for run in paragraph.runs:
                run.font.size = Pt(size)

    def _add_table(self, doc, rows, header=("Item", "Value")):
        table = doc.add_table(rows=1, cols=len(header))
        table.style = 'Table Grid'
        for cell, text in zip(table.rows[0].cells, header):
            cell.text = text
            for run in cell.paragraphs[0].runs:
                run.font.bold = True
        for values in rows:
            cells = table.add_row().cells
            for cell, value in zip(cells, values):
                cell.text = str(value)
                self._set_cell_font_size(cell)
        return table

    def export_report_to_word(self, report: VerificationReport, output_path: str,
                              title: str = "ER Pointlike Certification") -> str:
        """
        Word document with the sizes, every flag and the maximal pointlikes

        Returns:
            Path to generated document
        """
        output_path = self._resolve(output_path)
        doc = Document()
        doc.add_heading(title, level=1)
        verdict = "All checks passed" if report.ok else f"Failed: {', '.join(report.failed_flags())}"
        doc.add_paragraph(verdict)

        doc.add_heading("Sizes", level=2)
        self._add_table(doc, [
            ("Order", report.order),
            ("Elements", " ".join(report.labels)),
            ("In ER", report.is_in_ER),
            ("Construct rounds", report.construct_rounds),
            ("|C_ER(S)|", report.complex_size),
            ("|F|", report.fixed_size),
            ("|B|", report.block_count),
            ("|G|", report.group_order),
            ("|Q(S)|", report.state_count),
            ("|T|", report.transition_size),
        ])

        doc.add_heading("Checks", level=2)
        self._add_table(doc, [(name, "pass" if value else "FAIL") for name, value in report.flags.items()],
                        header=("Check", "Result"))
        if report.lambda_counterexample:
            doc.add_paragraph(f"Decreasing-map counterexample: {report.lambda_counterexample}")

        doc.add_heading("Maximal pointlike sets", level=2)
        for subset in report.max_pointlikes:
            doc.add_paragraph(subset, style='List Bullet')

        doc.save(output_path)
        logger.info(f"Report written to {output_path}")
        return output_path
