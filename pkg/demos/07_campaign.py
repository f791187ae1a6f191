"""A small randomized campaign.

Every cell (check, n, m, trial) gets its own seed, so the record stream is
reproducible byte for byte. The full acceptance run uses 200 trials for
n = 2, 3, 4; this one is kept short.
"""
import io

from bezout.campaign import CampaignConfig, run_campaign

config = CampaignConfig(dims=[2, 3], trials=5, seed=7, format="csv")
records = io.StringIO()
summary = run_campaign(config, stream=records)
print(summary.to_text())
print()
print("first records:")
print("\n".join(records.getvalue().splitlines()[:4]))

again = io.StringIO()
run_campaign(config, stream=again)
print("\nrerun identical:", again.getvalue() == records.getvalue())
