"""
Running every check
===================

"""

# A small budget runs in seconds and skips what does not fit;
# the default budget takes about a minute.
from paperfold import MU, Budget, Census, verify_all
from paperfold.verify import format_table

print(format_table(verify_all(Budget(max_square=8, max_depth=10))))

# A single changed block is caught at once.
bad = MU.replace("N", "INPK")
reports = verify_all(Budget(max_square=4, max_depth=10), Census(mu=bad, cap=10, max_dim=4))
for r in reports[:3]:
    print(r.check_id, r.status, r.witness)
