// ENRD token economy: mint-on-donation, burn-to-vote, proposal resolution.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edsim/donation.hpp"
#include "edsim/peer.hpp"

namespace edsim {

using TokenAmount = u64;

// Funded donations are paid by outside entities; their tokens accrue to one
// aggregate account since individual external donors are not modeled.
inline constexpr u64 kExternalDonorAccount = ~u64{0};

inline std::string token_account_name(u64 account) {
    return account == kExternalDonorAccount ? "external" : std::to_string(account);
}

enum class TokenRecordKind { mint, burn };

struct TokenRecord {
    TokenRecordKind kind = TokenRecordKind::mint;
    u64 account = 0;
    TokenAmount amount = 0;
    u64 timestep = 0;
    // Mint context: the donation that triggered it.
    std::optional<u64> donee;
    std::optional<DonationSource> source;
    // Burn context: the vote that consumed the tokens.
    std::optional<u64> proposal;
};

struct TokenLedger {
    std::map<u64, TokenAmount> balances;
    TokenAmount total_supply = 0;
    std::vector<TokenRecord> records;

    TokenAmount balance_of(u64 account) const {
        auto it = balances.find(account);
        return it == balances.end() ? 0 : it->second;
    }

    void mint(u64 account, TokenAmount amount, TokenRecord context) {
        balances[account] += amount;
        total_supply += amount;
        context.kind = TokenRecordKind::mint;
        context.account = account;
        context.amount = amount;
        records.push_back(context);
    }

    void burn(u64 account, TokenAmount amount, TokenRecord context) {
        auto it = balances.find(account);
        if (it == balances.end() || it->second < amount) {
            throw ValidationError("burn exceeds balance of account " +
                                  token_account_name(account));
        }
        it->second -= amount;
        total_supply -= amount;
        context.kind = TokenRecordKind::burn;
        context.account = account;
        context.amount = amount;
        records.push_back(context);
    }

    // Rebuilds state from the record history.
    TokenLedger replay() const {
        TokenLedger out;
        for (const auto& r : records) {
            if (r.kind == TokenRecordKind::mint) {
                out.mint(r.account, r.amount, r);
            } else {
                out.burn(r.account, r.amount, r);
            }
        }
        return out;
    }
};

// One token per kWh donated by default; the donor of a direct donation is
// credited, funded donations credit the aggregate external-donor account.
inline TokenAmount mint_on_donation(TokenLedger& ledger, const DonationEvent& event,
                                    u64 tokens_per_kwh = 1) {
    const TokenAmount amount =
        div_round_half_up(static_cast<u128>(event.quantity.wh) * tokens_per_kwh, kWhPerKwh);
    if (amount == 0) return 0;
    const u64 account = event.source == DonationSource::peer_direct && event.donor
                            ? event.donor->id
                            : kExternalDonorAccount;
    TokenRecord ctx;
    ctx.timestep = event.timestep;
    ctx.donee = event.donee.id;
    ctx.source = event.source;
    ledger.mint(account, amount, ctx);
    return amount;
}

enum class ProposalStatus { open, approved, rejected };

inline const char* to_string(ProposalStatus status) {
    switch (status) {
        case ProposalStatus::open: return "open";
        case ProposalStatus::approved: return "approved";
        case ProposalStatus::rejected: return "rejected";
    }
    return "?";
}

// Donee-eligibility proposal decided by burned-token weight.
struct EligibilityProposal {
    u64 id = 0;
    PeerId subject;
    ProposalStatus status = ProposalStatus::open;
    TokenAmount for_weight = 0;
    TokenAmount against_weight = 0;
    TokenAmount quorum = 0;
    u64 opened_at = 0;
    u64 closes_at = 0;
};

struct Vote {
    PeerId voter;
    u64 proposal = 0;
    bool in_favor = true;
    TokenAmount burn_amount = 0;
};

// Burns the voter's tokens and adds their weight to the chosen tally.
// Rejected votes leave ledger and proposal untouched.
inline void cast_vote(TokenLedger& ledger, EligibilityProposal& proposal, const Vote& vote) {
    if (proposal.status != ProposalStatus::open) {
        throw ValidationError("proposal " + std::to_string(proposal.id) + " is not open");
    }
    if (vote.burn_amount == 0) {
        throw ValidationError("vote must burn a positive amount");
    }
    if (ledger.balance_of(vote.voter.id) < vote.burn_amount) {
        throw ValidationError("vote burn exceeds balance of peer " +
                              std::to_string(vote.voter.id));
    }
    TokenRecord ctx;
    ctx.proposal = proposal.id;
    ledger.burn(vote.voter.id, vote.burn_amount, ctx);
    if (vote.in_favor) {
        proposal.for_weight += vote.burn_amount;
    } else {
        proposal.against_weight += vote.burn_amount;
    }
}

// Approved on a strict burned-weight majority meeting the quorum; ties fail.
inline ProposalStatus resolve(EligibilityProposal& proposal) {
    if (proposal.status != ProposalStatus::open) {
        throw ValidationError("proposal " + std::to_string(proposal.id) + " already resolved");
    }
    const bool quorum_met = proposal.for_weight + proposal.against_weight >= proposal.quorum;
    proposal.status = (quorum_met && proposal.for_weight > proposal.against_weight)
                          ? ProposalStatus::approved
                          : ProposalStatus::rejected;
    return proposal.status;
}

} // namespace edsim
