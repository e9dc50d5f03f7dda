"""Line-oriented structured-text documents for DL trails and distinguishers.

Fixed key order makes the files diff-able; hex words are lowercase 0x
strings and pairs are left,right. Interior trail words are stored so a
document re-verifies without any search.
"""

from .cipher import format_pair, get_spec, parse_pair
from .diff import DiffTrail
from .lin import LinTrail
from .search import DLDistinguisher, DLTrail, RoundConfig

FORMAT_VERSION = 1


def _words(values):
    return ";".join("0x%x" % v for v in values)


def _parse_words(text):
    return tuple(int(p, 16) for p in text.split(";"))


def dump_trail(trail, spec):
    """Serialise a DLTrail (optionally with its distinguisher) to text."""
    lines = [
        ("format_version", str(FORMAT_VERSION)),
        ("cipher", spec.name),
        ("branch_width", str(spec.n)),
        ("offsets", "%d,%d,%d" % (spec.a, spec.b, spec.c)),
        ("config", "%d,%d,%d" % (trail.config.rd, trail.config.rm,
                                 trail.config.rl)),
        ("delta_in", format_pair(trail.delta_in)),
        ("delta_mid", format_pair(trail.delta_mid)),
        ("lambda_mid", format_pair(trail.lambda_mid)),
        ("lambda_out", format_pair(trail.lambda_out)),
        ("log2_p", str(trail.log2_p)),
        ("log2_q", str(trail.log2_q)),
        ("r_mid", "%.17g" % trail.r_mid),
        ("cor_total", "%.17g" % trail.cor_total),
    ]
    if trail.diff_trail is not None:
        lines.append(("diff_trail", _words(trail.diff_trail.alphas)))
    if trail.lin_trail is not None:
        lines.append(("lin_trail", _words(trail.lin_trail.lambdas)))
    return "".join("%s: %s\n" % kv for kv in lines)


def dump_distinguisher(dist, seed_trail, spec):
    """Trail document plus the distinguisher block."""
    text = dump_trail(seed_trail, spec)
    cells = ",".join("%d/%d:%d" % (wd, wl, dist.cells[(wd, wl)][0])
                     for wd, wl in sorted(dist.cells))
    extra = [
        ("distinguisher", "yes"),
        ("p_bar", str(dist.p_bar)),
        ("q_bar", str(dist.q_bar)),
        ("cor_sum", "%.17g" % dist.cor_sum),
        ("trail_counts", cells),
    ]
    return text + "".join("%s: %s\n" % kv for kv in extra)


def histogram_csv(dist):
    """Contribution histogram: diff_weight, lin_weight, trail_count,
    signed_contribution."""
    lines = ["diff_weight,lin_weight,trail_count,signed_contribution"]
    for wd, wl in sorted(dist.cells):
        count, contrib = dist.cells[(wd, wl)]
        lines.append("%d,%d,%d,%.17g" % (wd, wl, count, contrib))
    return "\n".join(lines) + "\n"


def load(text):
    """Parse a document; returns (spec, DLTrail, DLDistinguisher | None)."""
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValueError("line %d: expected 'key: value'" % lineno)
        fields[key.strip()] = value.strip()
    version = int(fields["format_version"])
    if version != FORMAT_VERSION:
        raise ValueError("unsupported format_version %d" % version)
    spec = get_spec(fields["cipher"])
    if spec.n != int(fields["branch_width"]):
        raise ValueError("branch_width mismatch for %s" % spec.name)
    config = RoundConfig.parse(fields["config"])
    trail = DLTrail(
        spec.name, config,
        parse_pair(fields["delta_in"], spec),
        parse_pair(fields["delta_mid"], spec),
        parse_pair(fields["lambda_mid"], spec),
        parse_pair(fields["lambda_out"], spec),
        int(fields["log2_p"]),
        float(fields["r_mid"]),
        int(fields["log2_q"]),
    )
    if "diff_trail" in fields:
        alphas = _parse_words(fields["diff_trail"])
        trail.diff_trail = DiffTrail(alphas, -trail.log2_p)
    if "lin_trail" in fields:
        lambdas = _parse_words(fields["lin_trail"])
        trail.lin_trail = LinTrail(lambdas, -trail.log2_q)
    stored_total = float(fields["cor_total"])
    if abs(stored_total - trail.cor_total) > 1e-15 + 1e-9 * abs(stored_total):
        raise ValueError("cor_total does not recompose from components")
    dist = None
    if fields.get("distinguisher") == "yes":
        cells = {}
        if fields.get("trail_counts"):
            for item in fields["trail_counts"].split(","):
                wdwl, _, count = item.partition(":")
                wd, _, wl = wdwl.partition("/")
                cells[(int(wd), int(wl))] = (int(count), 0.0)
        dist = DLDistinguisher(
            spec.name, config, trail.delta_in, trail.lambda_out,
            int(fields["p_bar"]), int(fields["q_bar"]),
            float(fields["cor_sum"]), cells)
    return spec, trail, dist
