"""Every shipped fixture checked against its known values."""
from psikit.corpus import fixtures_run

rows = fixtures_run()
for r in rows:
    print(f"{'pass' if r.passed else 'FAIL'}  {r.fixture:22s} {r.quantity:24s} {r.computed}")
print(f"{sum(r.passed for r in rows)}/{len(rows)} rows pass")
