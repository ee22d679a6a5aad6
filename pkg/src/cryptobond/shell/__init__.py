from .quotes import MarketQuotes, Quote, QuotesError, ingest_quotes
from .scenario import Scenario, ScenarioError, dump_scenario, load_scenario

__all__ = [
    "MarketQuotes",
    "Quote",
    "QuotesError",
    "Scenario",
    "ScenarioError",
    "dump_scenario",
    "ingest_quotes",
    "load_scenario",
]
