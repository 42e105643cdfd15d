#pragma once

#include "iivcg/contracts.hpp"
#include "iivcg/engine.hpp"
#include "iivcg/grids.hpp"

namespace iivcg {

enum class ContractKind { Algorithmic, AuctionInspired, Weighted, FirstPrice };

std::string contract_name(ContractKind kind);

struct Counterexample {
  BidProfile profile;
  std::optional<size_t> principal;
  std::optional<Valuation> deviation;
  std::optional<size_t> outcome;
  Rat lhs;
  Rat rhs;
  std::string what;
};

struct PropertyResult {
  bool pass = true;
  size_t checks = 0;
  std::optional<Counterexample> counterexample;
};

struct AuditReport {
  std::string contract;
  PropertyResult truthful;
  PropertyResult ir;
  PropertyResult ll;
  PropertyResult aggregate_ll;  // relaxation: only the summed payment stays nonnegative
  PropertyResult efficiency;
  std::optional<PropertyResult> identity;  // algorithmic contract only
  GridMetadata grid;

  bool all_pass() const {
    return truthful.pass && ir.pass && ll.pass && aggregate_ll.pass && efficiency.pass &&
           (!identity || identity->pass);
  }
};

// Grid sweeps. Counterexamples are minimal-index in (profile, principal,
// deviation, outcome) order regardless of the parallel flag; the parallel
// kernels evaluate independent grid points and the scan stays serial.

PropertyResult audit_truthful(const Setting& s, const PaymentRule& rule,
                              const std::vector<BidProfile>& profiles,
                              const std::vector<std::vector<Valuation>>& deviations,
                              bool parallel = true);

PropertyResult audit_ir(const Setting& s, const PaymentRule& rule,
                        const std::vector<BidProfile>& profiles, bool parallel = true);

// {entrywise, aggregate}
std::pair<PropertyResult, PropertyResult> audit_ll(const Setting& s, const PaymentRule& rule,
                                                   const std::vector<BidProfile>& profiles,
                                                   bool parallel = true);

PropertyResult audit_efficiency(const Setting& s, const PaymentRule& rule,
                                const std::vector<BidProfile>& profiles, bool parallel = true);

PropertyResult audit_payment_identity(const Setting& s, const Alg1Rule& rule,
                                      const std::vector<BidProfile>& profiles,
                                      bool parallel = true);

// Single-profile identity check against explicit parameters and payments;
// lets tests feed perturbed matrices.
std::optional<Counterexample> identity_violation(const Setting& s, const ContractParams& params,
                                                 const PaymentMatrix& payments,
                                                 const BidProfile& profile);

struct AuditOptions {
  GridSpec grid;
  std::optional<CorrelationGraph> graph;  // weighted contract; complete graph by default
  bool parallel = true;
};

AuditReport run_audit(const Setting& s, ContractKind kind, const AuditOptions& opts = {});

}  // namespace iivcg
