#pragma once

#include <string>
#include <vector>

#include "limcert/json_io.hpp"

namespace limcert {

enum class ReportFormat { Json, Markdown };

struct RunConfig {
    SystemConfig system;
    std::vector<GridPoint> grid;  // empty means the default grid
    long horizon = 8;
    AnnulusSpec annulus{Rat(1), Rat(0)};
    Exp annulus_degree_bound = 200;
    std::string out_path;  // empty writes to stdout
    ReportFormat format = ReportFormat::Json;
};

// The three systems the report always covers, with their claim strengths:
// the bidisk verdict is an exact-arithmetic certificate, the positive cases
// are corpus evidence. When a positive system degenerates, coherent-sheaf
// cohomology vanishes in higher degrees (the Cartan-style Theorems A and B
// apply under the degeneration hypothesis).
struct Report {
    Lim1Verdict bidisk;
    Lim1Verdict open_disk;
    AnnulusCheckResult annulus;
    long grid_size = 0;
    bool grid_reduced = false;  // nonempty but below default coverage

    bool as_expected() const {
        return bidisk.kind == Lim1Verdict::Kind::NonZeroCertified &&
               open_disk.kind == Lim1Verdict::Kind::VanishesEvidence &&
               annulus.kind == AnnulusCheckResult::Kind::VanishesEvidence;
    }
};

inline Report build_report(const RunConfig& cfg) {
    Report rep;

    const InverseSystem bidisk = build_system(SystemKind::BidiskOpenDagger, cfg.system);
    const auto grid = cfg.grid.empty() ? default_grid(bidisk) : cfg.grid;
    rep.grid_size = static_cast<long>(grid.size());
    rep.grid_reduced = !grid.empty() && grid.size() < default_grid(bidisk).size();
    rep.bidisk = lim1_verdict(bidisk, grid);

    const InverseSystem stein = build_system(SystemKind::OpenDiskStein, cfg.system);
    rep.open_disk = lim1_verdict(stein, standard_open_disk_corpus(), cfg.horizon);

    const auto ex = default_annulus_exhaustion(cfg.annulus);
    rep.annulus = annulus_rlim_check(cfg.annulus, ex, cfg.annulus_degree_bound,
                                     standard_annulus_corpus(cfg.annulus, cfg.annulus_degree_bound,
                                                             cfg.system.prime),
                                     cfg.system, cfg.horizon);
    return rep;
}

inline Json report_to_json(const Report& rep, const RunConfig& cfg) {
    Json sections = Json::array();

    sections.push_back(Json{
        {"system", "bidisk_open_dagger"},
        {"description", "open unit disk x dagger closed unit disk"},
        {"verdict", lim1_kind_name(rep.bidisk.kind)},
        {"claim_strength", "certified"},
        {"certificates", static_cast<long>(rep.bidisk.certificates.size())},
        {"grid_coverage", rep.grid_reduced ? "inconclusive-grid" : "default"},
        {"conclusion", rep.bidisk.kind == Lim1Verdict::Kind::NonZeroCertified
                           ? "derived limit has nonzero lim^1: H^1 of the structure sheaf is nonzero"
                           : "no conclusion"},
    });

    sections.push_back(Json{
        {"system", "open_disk_stein"},
        {"description", "open unit disk, classical Stein control case"},
        {"verdict", lim1_kind_name(rep.open_disk.kind)},
        {"claim_strength", "evidence"},
        {"corpus", Json{{"total", rep.open_disk.solver.total}, {"lifted", rep.open_disk.solver.lifted}}},
        {"conclusion", rep.open_disk.kind == Lim1Verdict::Kind::VanishesEvidence
                           ? "lim ~ Rlim on the corpus; under that hypothesis Theorems A and B apply"
                           : "no conclusion"},
    });

    sections.push_back(Json{
        {"system", "annulus_half_open"},
        {"description", "half-open annulus, Frechet (+) LB decomposition"},
        {"verdict", annulus_kind_name(rep.annulus.kind)},
        {"claim_strength", "evidence"},
        {"structural_constant_dagger", rep.annulus.constant_dagger_direction},
        {"split_natural", rep.annulus.split_natural},
        {"corpus", Json{{"total", rep.annulus.solver.total}, {"lifted", rep.annulus.solver.lifted}}},
        {"conclusion", rep.annulus.kind == AnnulusCheckResult::Kind::VanishesEvidence
                           ? "lim ~ Rlim on the corpus; under that hypothesis Theorems A and B apply"
                           : "no conclusion"},
    });

    Json diagnostics = Json::array();
    for (const auto& d : rep.bidisk.diagnostics) diagnostics.push_back("bidisk: " + d);
    for (const auto& d : rep.open_disk.diagnostics) diagnostics.push_back("open-disk: " + d);
    for (const auto& d : rep.annulus.diagnostics) diagnostics.push_back("annulus: " + d);

    return Json{{"config", to_json(cfg.system)},
                {"grid_size", rep.grid_size},
                {"sections", std::move(sections)},
                {"diagnostics", std::move(diagnostics)},
                {"as_expected", rep.as_expected()}};
}

inline std::string report_to_markdown(const Report& rep, const RunConfig& cfg) {
    std::string md;
    md += "# Derived-limit report\n\n";
    md += "Config: prime " + cfg.system.prime.str() + ", eta family " + cfg.system.eta.str() + "\n\n";

    md += "## Bidisk (open x dagger closed)\n";
    md += "- verdict: **" + std::string(lim1_kind_name(rep.bidisk.kind)) + "** (certified)\n";
    md += "- certificates: " + std::to_string(rep.bidisk.certificates.size()) + " / grid " +
          std::to_string(rep.grid_size) + (rep.grid_reduced ? " (inconclusive-grid: reduced coverage)" : "") +
          "\n";
    if (rep.bidisk.kind == Lim1Verdict::Kind::NonZeroCertified)
        md += "- conclusion: lim^1 is nonzero, so H^1 of the structure sheaf does not vanish\n";
    md += "\n## Open disk (Stein control)\n";
    md += "- verdict: **" + std::string(lim1_kind_name(rep.open_disk.kind)) + "** (evidence)\n";
    md += "- corpus: " + std::to_string(rep.open_disk.solver.lifted) + "/" +
          std::to_string(rep.open_disk.solver.total) + " lifted\n";
    if (rep.open_disk.kind == Lim1Verdict::Kind::VanishesEvidence)
        md += "- conclusion: lim ~ Rlim on the corpus; under that hypothesis Theorems A and B apply\n";
    md += "\n## Half-open annulus\n";
    md += "- verdict: **" + std::string(annulus_kind_name(rep.annulus.kind)) + "** (evidence)\n";
    md += std::string("- constant dagger direction: ") +
          (rep.annulus.constant_dagger_direction ? "yes" : "no") + "\n";
    md += std::string("- split natural: ") + (rep.annulus.split_natural ? "yes" : "no") + "\n";
    md += "- corpus: " + std::to_string(rep.annulus.solver.lifted) + "/" +
          std::to_string(rep.annulus.solver.total) + " lifted\n";
    if (rep.annulus.kind == AnnulusCheckResult::Kind::VanishesEvidence)
        md += "- conclusion: lim ~ Rlim on the corpus; under that hypothesis Theorems A and B apply\n";

    for (const auto& d : rep.bidisk.diagnostics) md += "\n> bidisk: " + d;
    for (const auto& d : rep.open_disk.diagnostics) md += "\n> open-disk: " + d;
    for (const auto& d : rep.annulus.diagnostics) md += "\n> annulus: " + d;
    md += "\n";
    return md;
}

}  // namespace limcert
