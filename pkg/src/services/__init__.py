"""Services behind the retractlab commands."""
