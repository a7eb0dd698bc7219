"""Round-based simulation of coded multicast over a lossy DAG.

Time advances in rounds.  In each round every source/relay decides how many
packets to send from its state at the start of the round, each transmission
is broadcast to the node's successors with an independent Bernoulli loss per
link, and arrivals are absorbed at the end of the round.  Relays therefore
recode whatever fresh packets they buffered during round ``t`` in round
``t + 1``.

Three strategies share the same topology, pacing and loss model:

``no_coding_retransmit``
    Plain routing.  Every sink gets its own unicast copy of each original
    along a shortest path, and each hop resends a lost packet the next
    round until the next hop acknowledges it.
``fixed``
    Random linear network coding with one predetermined rate everywhere.
``adaptive``
    The same coding with per-node rates recomputed by the controller from
    each epoch's send/receive counters.

The source takes in ``batch`` originals per round and emits
``ceil(rate * taken)`` coded packets; a relay emits ``ceil(rate * fresh)``
per round, capped by what its successors can still use.  The rounding surplus
is carried as credit so the long-run emission ratio equals the rate.

Once the network goes quiet with some sink still short, the source sends
``ceil(rate * deficit)`` more packets for the largest sink deficit.  During
this repair phase relays forward ``ceil(rate * received)`` packets recoded
from everything they hold, capped by the largest deficit among the sinks
below them, so a hop with too little redundancy costs another end-to-end
wave.  Control traffic (reports, rate directives, rank and deficit signals)
is free and lossless; efficiency only counts data packets sent by the
source and relays.
"""

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .controller import NodeReport, RateController
from .errors import ConfigError, IntegrityError, Undefined
from .gf import field_for
from .rlnc import CodingGroup, Decoder, SourceEncoder, recode

ROLES = ("source", "relay", "sink")
STRATEGIES = ("no_coding_retransmit", "fixed", "adaptive")
RESULT_HEADER = ["n", "strategy", "seed", "total_sent", "rounds",
                 "decoded_sinks", "efficiency", "normalized_efficiency"]
TRACE_HEADER = ["round", "node", "role", "sent", "received", "fresh", "rank", "rate"]

_EPS = 1e-9


@dataclass(frozen=True)
class Link:
    src: str
    dst: str
    loss: float = None


@dataclass
class Topology:
    """Nodes tagged source/relay/sink and directed lossy links.

    ``designated`` maps a node to the upstream nodes whose packets it accepts;
    nodes missing from it accept every predecessor.  A link whose ``loss`` is
    None gets a loss drawn from the run's ``loss_range``.
    """

    nodes: dict
    links: list
    designated: dict = field(default_factory=dict)

    def __post_init__(self):
        self.nodes = dict(self.nodes)
        self.links = [l if isinstance(l, Link) else Link(*l) for l in self.links]
        self.designated = {k: tuple(v) for k, v in self.designated.items()}

    @property
    def source(self):
        return next(n for n, r in self.nodes.items() if r == "source")

    @property
    def sinks(self):
        return [n for n, r in self.nodes.items() if r == "sink"]

    @property
    def coders(self):
        return [n for n in self.order() if self.nodes[n] != "sink"]

    def accepts(self, dst, src):
        allowed = self.designated.get(dst)
        return allowed is None or src in allowed

    def out_links(self, node):
        """Links from ``node`` whose head accepts its packets."""
        return [l for l in self.links if l.src == node and self.accepts(l.dst, l.src)]

    def successors(self, node):
        return [l.dst for l in self.out_links(node)]

    def upstream(self, node):
        return [l.src for l in self.links if l.dst == node and self.accepts(node, l.src)]

    def order(self):
        """Topological order, ties broken by declaration order."""
        indeg = {n: 0 for n in self.nodes}
        for l in self.links:
            indeg[l.dst] += 1
        ready = [n for n in self.nodes if indeg[n] == 0]
        out = []
        while ready:
            node = ready.pop(0)
            out.append(node)
            for l in self.links:
                if l.src == node:
                    indeg[l.dst] -= 1
                    if indeg[l.dst] == 0:
                        ready.append(l.dst)
        if len(out) != len(self.nodes):
            raise ConfigError("topology contains a cycle")
        return out

    def validate(self):
        for node, role in self.nodes.items():
            if role not in ROLES:
                raise ConfigError(f"node {node!r} has unknown role {role!r}")
        if sum(r == "source" for r in self.nodes.values()) != 1:
            raise ConfigError("topology needs exactly one source")
        if not self.sinks:
            raise ConfigError("topology needs at least one sink")
        seen = set()
        for l in self.links:
            if l.src not in self.nodes or l.dst not in self.nodes:
                raise ConfigError(f"link {l.src}->{l.dst} references an unknown node")
            if (l.src, l.dst) in seen:
                raise ConfigError(f"duplicate link {l.src}->{l.dst}")
            seen.add((l.src, l.dst))
            if l.loss is not None and not 0 <= l.loss <= 1:
                raise ConfigError(f"loss on {l.src}->{l.dst} must lie in [0, 1]")
            if self.nodes[l.src] == "sink":
                raise ConfigError(f"sink {l.src!r} cannot transmit")
        for node, ups in self.designated.items():
            for up in ups:
                if (up, node) not in seen:
                    raise ConfigError(f"{node!r} designates {up!r} but there is no such link")
        self.order()
        reach = {self.source}
        for node in self.order():
            if node in reach:
                reach.update(self.successors(node))
        for sink in self.sinks:
            if sink not in reach:
                raise ConfigError(f"sink {sink!r} is unreachable from the source")
        for node in self.coders:
            if node in reach and not self.successors(node):
                raise ConfigError(f"coding node {node!r} has no successors")

    def realize(self, rng, loss_range):
        """Copy with every unspecified loss drawn uniformly from ``loss_range``."""
        lo, hi = loss_range
        links = [l if l.loss is not None else Link(l.src, l.dst, float(rng.uniform(lo, hi)))
                 for l in self.links]
        return Topology(self.nodes, links, self.designated)

    def to_dict(self):
        return {
            "nodes": [{"id": n, "role": r} for n, r in self.nodes.items()],
            "links": [{"from": l.src, "to": l.dst, "loss": l.loss} for l in self.links],
            "designated": {k: list(v) for k, v in self.designated.items()},
        }

    @classmethod
    def from_dict(cls, doc):
        try:
            nodes = {d["id"]: d["role"] for d in doc["nodes"]}
            links = [Link(d["from"], d["to"], d.get("loss")) for d in doc["links"]]
        except KeyError as exc:
            raise ConfigError(f"topology is missing key {exc.args[0]!r}") from None
        except TypeError:
            raise ConfigError("topology 'nodes' and 'links' must be lists of objects") from None
        return cls(nodes, links, doc.get("designated") or {})


def reference_topology():
    """Three hops from the source to each of two sinks, with a broadcast
    relay in the middle: S -> R1 -> {R2, R3}, R2 -> T1, R3 -> T2.

    Our own reconstruction of a source-to-two-sinks layout; link losses are
    left unspecified so each run draws them.
    """
    nodes = {"S": "source", "R1": "relay", "R2": "relay", "R3": "relay",
             "T1": "sink", "T2": "sink"}
    links = [Link("S", "R1"), Link("R1", "R2"), Link("R1", "R3"),
             Link("R2", "T1"), Link("R3", "T2")]
    return Topology(nodes, links)


def butterfly_topology(loss=0.0):
    """The two-source-edge butterfly: S feeds R1 and R2, both feed R3, R3
    feeds R4, and each sink hears one side relay plus R4."""
    nodes = {"S": "source", "R1": "relay", "R2": "relay", "R3": "relay",
             "R4": "relay", "T1": "sink", "T2": "sink"}
    pairs = [("S", "R1"), ("S", "R2"), ("R1", "R3"), ("R2", "R3"), ("R3", "R4"),
             ("R1", "T1"), ("R4", "T1"), ("R2", "T2"), ("R4", "T2")]
    return Topology(nodes, [Link(a, b, loss) for a, b in pairs])


def chain_topology(losses):
    """Source, ``len(losses) - 1`` relays and a sink in a line."""
    names = ["S"] + [f"R{i}" for i in range(1, len(losses))] + ["T"]
    nodes = {n: "relay" for n in names}
    nodes["S"], nodes["T"] = "source", "sink"
    links = [Link(a, b, p) for a, b, p in zip(names, names[1:], losses)]
    return Topology(nodes, links)


@dataclass
class RunConfig:
    n: int
    strategy: str = "adaptive"
    rate: float = 1.25
    m: int = 8
    L: int = 8
    rounds: int = 1000
    seed: int = 0
    bounds: tuple = (1.0, 4.0)
    epoch: int = 1
    initial_rate: float = 1.2
    batch: int = 16
    successor_aggregate: str = "max"
    loss_range: tuple = (0.05, 0.35)
    check_linearity: bool = False
    data: str = None

    def __post_init__(self):
        self.bounds = tuple(self.bounds)
        self.loss_range = tuple(self.loss_range)
        self.validate()

    def validate(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError("n must be a positive integer")
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        if self.rate <= 0:
            raise ConfigError("fixed rate must be positive")
        if self.rounds < 1:
            raise ConfigError("rounds must be at least 1")
        if self.epoch < 1:
            raise ConfigError("epoch must be at least 1")
        if self.batch < 1:
            raise ConfigError("batch must be at least 1")
        if self.m not in (8, 16):
            raise ConfigError("m must be 8 or 16")
        if self.L < 1:
            raise ConfigError("L must be at least 1")
        lo, hi = self.loss_range
        if not 0 <= lo <= hi <= 1:
            raise ConfigError("loss_range must satisfy 0 <= lo <= hi <= 1")
        if not 0 < self.bounds[0] <= self.bounds[1]:
            raise ConfigError("bounds must satisfy 0 < r_min <= r_max")
        if self.initial_rate <= 0:
            raise ConfigError("initial_rate must be positive")

    def to_dict(self):
        d = asdict(self)
        d["bounds"] = list(self.bounds)
        d["loss_range"] = list(self.loss_range)
        return d


@dataclass
class RunResult:
    config: dict
    topology: dict
    total_sent: int
    rounds: int
    decode_rounds: dict
    sent_by_node: dict
    trace: list

    @property
    def n(self):
        return self.config["n"]

    @property
    def decoded_sinks(self):
        return sum(r is not None for r in self.decode_rounds.values())

    @property
    def dnf(self):
        return self.decoded_sinks < len(self.decode_rounds)

    @property
    def efficiency(self):
        if self.decoded_sinks == 0:
            return None
        return transmission_efficiency(self)

    def row(self, normalized=None):
        eff = self.efficiency
        return {
            "n": self.n,
            "strategy": self.config["strategy"],
            "seed": self.config["seed"],
            "total_sent": self.total_sent,
            "rounds": self.rounds,
            "decoded_sinks": self.decoded_sinks,
            "efficiency": eff,
            "normalized_efficiency": normalized,
        }

    def summary(self):
        return {
            "efficiency": self.efficiency,
            "rounds": self.rounds,
            "decoded_sinks": self.decoded_sinks,
            "sinks": len(self.decode_rounds),
            "dnf": self.dnf,
            "total_sent": self.total_sent,
            "decode_rounds": self.decode_rounds,
            "sent_by_node": self.sent_by_node,
            "config": self.config,
            "topology": self.topology,
        }


def transmission_efficiency(result):
    """Minimum packets needed (``n``) over data packets sent by source and relays."""
    if result.decoded_sinks == 0:
        raise Undefined("no sink decoded, efficiency is undefined")
    return result.n / result.total_sent


def _streams(seed, topology):
    """Independent generators per node, per link and for setup draws."""
    nodes = {name: np.random.default_rng([seed, 0, i])
             for i, name in enumerate(topology.nodes)}
    links = {(l.src, l.dst): np.random.default_rng([seed, 1, i])
             for i, l in enumerate(topology.links)}
    return nodes, links, np.random.default_rng([seed, 2]), np.random.default_rng([seed, 3])


class _Emitter:
    """Rate credit: ``take(base)`` returns how many packets to send now."""

    def __init__(self, rate):
        self.rate = rate
        self.credit = 0.0

    def take(self, base, limit=None):
        """``limit`` caps the count; the credit it would have used is dropped."""
        if base <= 0:
            return 0
        self.credit += self.rate * base
        count = math.ceil(self.credit - _EPS) if self.credit > _EPS else 0
        if limit is not None and count > limit:
            self.credit = 0.0
            return limit
        self.credit -= count
        return count


def run(topology, config):
    """Simulate one coding group from the source to every sink."""
    topology.validate()
    config.validate()
    node_rng, link_rng, topo_rng, data_rng = _streams(config.seed, topology)
    realized = topology.realize(topo_rng, config.loss_range)
    gf = field_for(config.m)
    if config.data is not None:
        group, _ = CodingGroup.from_bytes(config.data.encode(), config.n, gf)
    else:
        group = CodingGroup.random(config.n, config.L, data_rng, gf)
    sim_cls = _RetransmitSim if config.strategy == "no_coding_retransmit" else _CodedSim
    sim = sim_cls(realized, config, group, node_rng, link_rng)
    return sim.run()


class _Sim:
    def __init__(self, topology, config, group, node_rng, link_rng):
        self.topo = topology
        self.config = config
        self.group = group
        self.n = group.n
        self.node_rng = node_rng
        self.link_rng = link_rng
        self.order = topology.order()
        self.coders = [v for v in self.order if topology.nodes[v] != "sink"]
        self.sinks = topology.sinks
        self.source = topology.source
        self.links = {v: topology.out_links(v) for v in self.order}
        self.sent = {v: 0 for v in self.coders}
        self.decode_round = {s: None for s in self.sinks}
        self.remaining = self.n
        self.trace = []

    def deliver(self, link):
        return self.link_rng[(link.src, link.dst)].random() >= link.loss

    def result(self, rounds):
        return RunResult(
            config=self.config.to_dict(),
            topology=self.topo.to_dict(),
            total_sent=sum(self.sent.values()),
            rounds=rounds,
            decode_rounds=dict(self.decode_round),
            sent_by_node=dict(self.sent),
            trace=self.trace,
        )

    def run(self):
        t = 0
        for t in range(1, self.config.rounds + 1):
            self.step(t)
            if all(r is not None for r in self.decode_round.values()):
                break
        return self.result(t)


class _CodedSim(_Sim):
    def __init__(self, *args):
        super().__init__(*args)
        cfg = self.config
        gf = self.group.field
        self.gf = gf
        self.encoder = SourceEncoder(self.group, self.node_rng[self.source])
        self.state = {v: Decoder(self.n, self.group.L, gf)
                      for v in self.order if v != self.source}
        self.buffer = {v: [] for v in self.coders}
        self.inbox = {v: 0 for v in self.coders if v != self.source}
        self.repairing = False
        self.reach = {}
        for v in reversed(self.order):
            below = {v} if self.topo.nodes[v] == "sink" else set()
            for u in self.successors(v):
                below |= self.reach[u]
            self.reach[v] = below
        single = {}
        for v in self.order:
            ups = self.topo.upstream(v)
            single[v] = ups[0] if len(ups) == 1 else None
        self.single_upstream = single
        rate = cfg.initial_rate if cfg.strategy == "adaptive" else cfg.rate
        self.emitter = {v: _Emitter(float(rate)) for v in self.coders}
        self.controller = None
        if cfg.strategy == "adaptive":
            self.controller = RateController(
                {v: self.successors(v) for v in self.coders},
                bounds=tuple(Fraction(b).limit_denominator(10**6) for b in cfg.bounds),
                aggregate=cfg.successor_aggregate,
                initial_rate=Fraction(cfg.initial_rate).limit_denominator(10**6))
        self.epoch_sent = {v: 0 for v in self.coders}
        self.epoch_recv = {v: {s: 0 for s in self.successors(v)} for v in self.coders}

    def successors(self, v):
        return [l.dst for l in self.links[v]]

    def rank(self, v):
        return self.n if v == self.source else self.state[v].rank

    def innovation(self, v, succ):
        """Dimensions ``v`` holds that ``succ`` is still missing."""
        if v == self.source:
            return self.n - self.state[succ].rank
        if self.single_upstream[succ] == v:
            return self.state[v].rank - self.state[succ].rank
        return self.state[succ].union_rank(self.state[v]) - self.state[succ].rank

    def demand(self, v):
        return max((self.innovation(v, s) for s in self.successors(v)), default=0)

    def sink_deficit(self, v=None):
        """Largest rank shortfall among the sinks downstream of ``v``."""
        sinks = self.sinks if v is None else self.reach[v]
        return max((self.n - self.state[s].rank for s in sinks), default=0)

    def step(self, t):
        plan = {}
        for v in self.coders:
            if v == self.source:
                continue
            if self.repairing:
                plan[v] = (min(self.inbox[v], self.sink_deficit(v)), None)
            else:
                need = self.demand(v)
                plan[v] = (min(len(self.buffer[v]), need), need)
        quiet = self.remaining == 0 and not any(base for base, _ in plan.values())
        if quiet:
            self.repairing = True
        outgoing = []
        for v in self.coders:
            packets = []
            if v == self.source:
                if self.remaining:
                    taken = min(self.config.batch, self.remaining)
                    self.remaining -= taken
                    need = self.demand(v)
                    count = self.emitter[v].take(min(taken, need), limit=need)
                elif quiet:
                    count = self.emitter[v].take(self.sink_deficit())
                else:
                    count = 0
                packets = self.encoder.emit(count)
            else:
                count = self.emitter[v].take(*plan[v])
                if count:
                    pool = (self.state[v].basis_packets() if self.repairing
                            else self.buffer[v])
                    packets = recode(pool, None, self.node_rng[v], count=count, field=self.gf)
                self.buffer[v] = []
            if self.config.check_linearity:
                self.check_linearity(packets)
            outgoing.append((v, packets))

        received = {v: 0 for v in self.order}
        fresh = {v: 0 for v in self.order}
        self.inbox = {v: 0 for v in self.coders if v != self.source}
        for v, packets in outgoing:
            self.sent[v] += len(packets)
            self.epoch_sent[v] += len(packets)
            for p in packets:
                for link in self.links[v]:
                    if not self.deliver(link):
                        continue
                    u = link.dst
                    received[u] += 1
                    self.epoch_recv[v][u] += 1
                    if u in self.inbox:
                        self.inbox[u] += 1
                    if self.state[u].accept(p):
                        fresh[u] += 1
                        if u in self.buffer:
                            self.buffer[u].append(p)

        for s in self.sinks:
            if self.decode_round[s] is None and self.state[s].complete:
                self.verify(s)
                self.decode_round[s] = t

        for v in self.order:
            emitter = self.emitter.get(v)
            self.trace.append({
                "round": t, "node": v, "role": self.topo.nodes[v],
                "sent": len(dict(outgoing).get(v, ())), "received": received[v],
                "fresh": fresh[v], "rank": self.rank(v),
                "rate": round(emitter.rate, 6) if emitter else "",
            })

        if self.controller is not None and t % self.config.epoch == 0:
            self.update_rates()

    def update_rates(self):
        active = [v for v in self.coders if self.epoch_sent[v] > 0]
        reports = [NodeReport(v, self.epoch_sent[v], dict(self.epoch_recv[v])) for v in active]
        for v, d in self.controller.update(reports, active).items():
            self.emitter[v].rate = float(d.rate)
        self.epoch_sent = {v: 0 for v in self.coders}
        self.epoch_recv = {v: {s: 0 for s in self.successors(v)} for v in self.coders}

    def verify(self, sink):
        if not np.array_equal(self.state[sink].decode(), self.group.payloads):
            raise IntegrityError(f"sink {sink!r} decoded data that differs from the source")

    def check_linearity(self, packets):
        for p in packets:
            expected = self.gf.matmul(p.vector[None, :], self.group.payloads)[0]
            if not np.array_equal(expected, p.payload):
                raise IntegrityError("coded payload is not the combination its vector claims")


class _RetransmitSim(_Sim):
    """Routing without coding: each sink is served by its own unicast flow
    along a shortest path, and every hop retransmits a lost packet the next
    round until the next hop acknowledges it."""

    def __init__(self, *args):
        super().__init__(*args)
        self.next_hop = {}
        for sink in self.sinks:
            path = self.route(sink)
            for a, b in zip(path, path[1:]):
                self.next_hop[(sink, a)] = b
        self.link_of = {(l.src, l.dst): l for v in self.order for l in self.links[v]}
        self.have = {v: set() for v in self.order}

    def route(self, sink):
        prev = {self.source: None}
        frontier = [self.source]
        while frontier and sink not in prev:
            nxt = []
            for v in frontier:
                for l in self.links[v]:
                    if l.dst not in prev:
                        prev[l.dst] = v
                        nxt.append(l.dst)
            frontier = nxt
        path = [sink]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        return path[::-1]

    def step(self, t):
        src = self.source
        if self.remaining:
            start = self.n - self.remaining
            taken = min(self.config.batch, self.remaining)
            self.have[src].update((s, i) for i in range(start, start + taken) for s in self.sinks)
            self.remaining -= taken
        outgoing = []
        for v in self.coders:
            pending = []
            for sink, i in sorted(self.have[v]):
                u = self.next_hop.get((sink, v))
                if u is not None and (sink, i) not in self.have[u]:
                    pending.append((u, sink, i))
            outgoing.append((v, pending))

        received = {v: 0 for v in self.order}
        fresh = {v: 0 for v in self.order}
        arrivals = {v: set() for v in self.order}
        for v, pending in outgoing:
            self.sent[v] += len(pending)
            for u, sink, i in pending:
                if not self.deliver(self.link_of[(v, u)]):
                    continue
                received[u] += 1
                if (sink, i) not in arrivals[u]:
                    arrivals[u].add((sink, i))
                    fresh[u] += 1
        for v, got in arrivals.items():
            self.have[v] |= got

        for s in self.sinks:
            if self.decode_round[s] is None and sum(f == s for f, _ in self.have[s]) == self.n:
                self.decode_round[s] = t

        for v in self.order:
            self.trace.append({
                "round": t, "node": v, "role": self.topo.nodes[v],
                "sent": len(dict(outgoing).get(v, ())), "received": received[v],
                "fresh": fresh[v], "rank": len(self.have[v]), "rate": "",
            })


def _run_cell(args):
    topology, cfg = args
    try:
        res = run(topology, cfg)
        return res.row(), None
    except Exception as exc:  # recorded per cell, the sweep continues
        return None, f"{type(exc).__name__}: {exc}"


def sweep(topology, base_config, n_values, strategies=STRATEGIES, seeds=range(30), jobs=1):
    """One row per (n, strategy, seed), normalised by the retransmission
    baseline at the same n and seed."""
    n_values = list(n_values)
    if not n_values:
        raise ConfigError("n_values must be nonempty")
    strategies = list(strategies)
    if "no_coding_retransmit" not in strategies:
        strategies = ["no_coding_retransmit"] + strategies
    cells = []
    base = base_config.to_dict()
    for n in n_values:
        for strategy in strategies:
            for seed in seeds:
                cfg = RunConfig(**{**base, "n": n, "strategy": strategy, "seed": seed})
                cells.append((topology, cfg))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_cell, cells, chunksize=4))
    else:
        outcomes = [_run_cell(c) for c in cells]

    rows = []
    baseline = {}
    for (topo, cfg), (row, err) in zip(cells, outcomes):
        if row is None:
            row = {"n": cfg.n, "strategy": cfg.strategy, "seed": cfg.seed,
                   "total_sent": None, "rounds": None, "decoded_sinks": 0,
                   "efficiency": None, "normalized_efficiency": None, "error": err}
        if cfg.strategy == "no_coding_retransmit":
            baseline[(cfg.n, cfg.seed)] = row["efficiency"]
        rows.append(row)
    for row in rows:
        ref = baseline.get((row["n"], row["seed"]))
        if row["efficiency"] is not None and ref:
            row["normalized_efficiency"] = row["efficiency"] / ref
    return rows


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(round(value, 12))
    return str(value)


def write_rows(rows, fh, header=RESULT_HEADER):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(row.get(k)) for k in header])


def rows_to_csv(rows, header=RESULT_HEADER):
    buf = io.StringIO()
    write_rows(rows, buf, header)
    return buf.getvalue()


def load_config(path_or_doc):
    """Read a run document: topology plus RunConfig fields in one JSON object.

    A document without ``nodes`` uses :func:`reference_topology`.
    """
    if isinstance(path_or_doc, dict):
        doc = dict(path_or_doc)
    else:
        with open(path_or_doc) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    if "nodes" in doc or "links" in doc:
        topology = Topology.from_dict(doc)
    else:
        topology = reference_topology()
    known = set(RunConfig.__dataclass_fields__)
    extra = set(doc) - known - {"nodes", "links", "designated", "n_values", "seeds"}
    if extra:
        raise ConfigError(f"unknown config key {sorted(extra)[0]!r}")
    fields = {k: doc[k] for k in known if k in doc}
    if "n" not in fields:
        raise ConfigError("config is missing key 'n'")
    try:
        config = RunConfig(**fields)
    except TypeError as exc:
        raise ConfigError(f"bad config value: {exc}") from None
    topology.validate()
    return topology, config, doc
