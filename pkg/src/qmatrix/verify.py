"""Data-driven identity suite and the step-by-step n = 3 replay.

Identities live in JSON manifests under ``qmatrix/data``. A manifest is
``{"n": N, "records": [{name, lhs, rhs, anchor[, n]}, ...]}``; replay
manifests use ``"steps"`` and a ``kind`` per step:

* ``identity``: ``lhs`` and ``rhs`` normalise to the same element;
* ``normal``: ``expr`` q-commutes with every generator;
* ``central``: ``expr`` commutes with every generator.

Expressions use the grammar in :mod:`qmatrix.expr`. Reports always list
records in manifest order.
"""

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .analysis import is_central, is_normal_qcentral
from .errors import NoUniformTwist, QMatrixError
from .expr import evaluate_text
from .pbw import QuantumMatrixAlgebra

__all__ = [
    "IdentityRecord",
    "RecordResult",
    "SuiteReport",
    "load_manifest",
    "default_manifest",
    "run_identity_suite",
    "run_records",
    "replay_n3_proof",
    "transpose_record",
]


@dataclass(frozen=True)
class IdentityRecord:
    name: str
    lhs: str = ""
    rhs: str = ""
    n: int = 3
    m: int = None
    anchor: str = ""
    kind: str = "identity"
    expr: str = ""

    @property
    def shape(self):
        return (self.m or self.n, self.n)

    @classmethod
    def from_dict(cls, d, n=None, m=None):
        return cls(
            name=d["name"],
            lhs=d.get("lhs", ""),
            rhs=d.get("rhs", ""),
            n=int(d.get("n", n)),
            m=d.get("m", m),
            anchor=d.get("anchor", ""),
            kind=d.get("kind", "identity"),
            expr=d.get("expr", ""),
        )


@dataclass
class RecordResult:
    name: str
    status: str  # "pass" or "fail"
    residual: object = None  # Element, or None on pass / evaluation error
    detail: str = ""

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self):
        out = {"name": self.name, "status": self.status}
        out["residual"] = "0" if self.residual is None and self.passed else (
            self.residual.to_text() if self.residual is not None else None)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    shape: tuple
    results: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    @property
    def failures(self):
        return [r for r in self.results if not r.passed]

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self):
        return {
            "shape": list(self.shape),
            "passed": self.passed,
            "total": len(self.results),
            "failed": len(self.failures),
            "records": [r.to_json() for r in self.results],
        }


def default_manifest(name):
    """Path to a shipped manifest such as ``identities_n3.json``."""
    return resources.files("qmatrix") / "data" / name


def load_manifest(path):
    """Read a manifest into a list of :class:`IdentityRecord`."""
    if isinstance(path, (str, Path)):
        data = json.loads(Path(path).read_text())
    else:
        data = json.loads(path.read_text())
    entries = data.get("records", data.get("steps", []))
    n, m = data.get("n"), data.get("m")
    return [IdentityRecord.from_dict(d, n, m) for d in entries]


def _check(record, algebra):
    try:
        if record.kind == "identity":
            res = evaluate_text(record.lhs, algebra) - evaluate_text(record.rhs, algebra)
            if res:
                return RecordResult(record.name, "fail", res)
            return RecordResult(record.name, "pass")
        x = evaluate_text(record.expr, algebra)
        if record.kind == "normal":
            try:
                cert = is_normal_qcentral(x)
            except NoUniformTwist as exc:
                return RecordResult(record.name, "fail", detail=str(exc))
            if not cert.verify():
                return RecordResult(record.name, "fail", detail="certificate failed to re-verify")
            return RecordResult(record.name, "pass")
        if record.kind == "central":
            ok = is_central(x)
            return RecordResult(record.name, "pass" if ok else "fail",
                                detail="" if ok else "does not commute with every generator")
        raise ValueError(f"unknown record kind {record.kind!r}")
    except (QMatrixError, ValueError, ZeroDivisionError, IndexError) as exc:
        return RecordResult(record.name, "fail", detail=f"{type(exc).__name__}: {exc}")


def run_records(records, algebra):
    """Check ``records`` in ``algebra``; failures are reported, never raised."""
    return SuiteReport((algebra.m, algebra.n), [_check(r, algebra) for r in records])


def run_identity_suite(n=3, algebra=None, manifest=None):
    """Run the identity manifest for ``n`` (or ``manifest``) in ``algebra``.

    ``algebra`` defaults to the generic n x n algebra; pass a specialized or
    perturbed algebra to test the harness itself.
    """
    if manifest is None:
        if n not in (2, 3):
            raise ValueError("shipped identity suites exist for n = 2 and n = 3")
        manifest = default_manifest(f"identities_n{n}.json")
    records = load_manifest(manifest)
    if algebra is None:
        algebra = QuantumMatrixAlgebra(records[0].shape[0], records[0].shape[1]) if records \
            else QuantumMatrixAlgebra(n)
    return run_records(records, algebra)


def replay_n3_proof(algebra=None, manifest=None):
    """Replay, in order, every concrete identity the n = 3 argument uses."""
    records = load_manifest(manifest or default_manifest("replay_n3.json"))
    return run_records(records, algebra or QuantumMatrixAlgebra(3))


def transpose_record(record):
    """The record obtained by applying the transpose to both sides."""
    if record.kind == "identity":
        return IdentityRecord(record.name + "_tau", f"tau({record.lhs})", f"tau({record.rhs})",
                              record.n, record.m, record.anchor, "identity")
    return IdentityRecord(record.name + "_tau", n=record.n, m=record.m, anchor=record.anchor,
                          kind=record.kind, expr=f"tau({record.expr})")
