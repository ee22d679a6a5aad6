"""Market yield quotes read from CSV (``instrument,currency,ytm,date``).

Loading is all-or-nothing: the first malformed row aborts with its line number.
Fetching quotes from a venue is left to whoever produces the file.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from datetime import date, datetime
from pathlib import Path

QUOTES_HEADER = ("instrument", "currency", "ytm", "date")


class QuotesError(ValueError):
    pass


@dataclass(frozen=True)
class Quote:
    instrument: str
    currency: str
    ytm: float
    date: date


@dataclass(frozen=True)
class MarketQuotes:
    rows: tuple[Quote, ...] = field(default_factory=tuple)
    fiat_inflation: float | None = None

    def __len__(self):
        return len(self.rows)

    def get(self, instrument: str) -> Quote:
        for q in self.rows:
            if q.instrument == instrument:
                return q
        raise KeyError(instrument)


def _parse_date(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        return datetime.fromisoformat(text).date()


def ingest_quotes(path: str | Path, fiat_inflation: float | None = None) -> MarketQuotes:
    if fiat_inflation is not None and not fiat_inflation > -1:
        raise QuotesError("fiat inflation forecast must be > -1")
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise QuotesError(f"cannot read quotes {path}: {exc.strerror}") from None
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != QUOTES_HEADER:
            raise QuotesError(f"line 1: expected header {','.join(QUOTES_HEADER)}")
        rows: list[Quote] = []
        seen: set[str] = set()
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                raise QuotesError(f"line {line}: expected 4 columns, got {len(row)}")
            instrument, currency, ytm_text, date_text = (c.strip() for c in row)
            if not instrument:
                raise QuotesError(f"line {line}: empty instrument id")
            if instrument in seen:
                raise QuotesError(f"line {line}: duplicate instrument {instrument!r}")
            try:
                ytm = float(ytm_text)
            except ValueError:
                raise QuotesError(f"line {line}: ytm {ytm_text!r} is not a number") from None
            if not ytm > -1 or ytm == float("inf"):
                raise QuotesError(f"line {line}: ytm {ytm} must be > -1")
            try:
                when = _parse_date(date_text)
            except ValueError:
                raise QuotesError(f"line {line}: date {date_text!r} is not ISO-8601") from None
            seen.add(instrument)
            rows.append(Quote(instrument, currency, ytm, when))
    return MarketQuotes(tuple(rows), fiat_inflation)
