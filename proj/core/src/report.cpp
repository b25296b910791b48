#include "airlex/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "airlex/errors.hpp"

namespace airlex {

namespace fs = std::filesystem;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open output file: " + path.string());
    return out;
}

void write_pos_summary(const TagRanking& ranking, const std::string& config_hash,
                       const fs::path& path) {
    std::ofstream out = open_out(path);
    out << "# config_hash=" << config_hash << "\n";
    out << "tag,n_s,avg_m1,avg_m2,rank_m1,rank_m2\n";
    for (const TagSummary& row : ranking.rows) {
        out << row.tag << "," << row.n_s << "," << fmt_double(row.avg_method1) << ","
            << fmt_double(row.avg_method2) << "," << row.rank_method1 << "," << row.rank_method2
            << "\n";
    }
}

void write_mi_scores(const ReportResult& r, const std::string& config_hash, const fs::path& path) {
    std::ofstream out = open_out(path);
    out << "# config_hash=" << config_hash << "\n";
    out << "characteristic,nmi\n";
    out << "appearances," << fmt_double(r.nmi_appearances.value) << "\n";
    out << "complexity," << fmt_double(r.nmi_complexity.value) << "\n";
    out << "tag," << fmt_double(r.nmi_tag.value) << "\n";
}

void write_bar_chart(const TagRanking& ranking, int method, const std::string& title,
                     const fs::path& path) {
    const int bar_h = 18, gap = 6, label_w = 140, chart_w = 360, top = 40;
    const int height = top + static_cast<int>(ranking.rows.size()) * (bar_h + gap) + 20;
    double max_avg = 0.0;
    for (const TagSummary& row : ranking.rows)
        max_avg = std::max(max_avg, method == 1 ? row.avg_method1 : row.avg_method2);
    if (max_avg <= 0.0) max_avg = 1.0;

    std::vector<TagSummary> rows = ranking.rows;
    std::sort(rows.begin(), rows.end(), [&](const TagSummary& a, const TagSummary& b) {
        return (method == 1 ? a.rank_method1 : a.rank_method2) <
               (method == 1 ? b.rank_method1 : b.rank_method2);
    });

    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (label_w + chart_w + 80)
        << "\" height=\"" << height << "\" font-family=\"monospace\" font-size=\"12\">\n";
    out << "<text x=\"10\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
    int y = top;
    for (const TagSummary& row : rows) {
        const double avg = method == 1 ? row.avg_method1 : row.avg_method2;
        const int w = static_cast<int>(chart_w * avg / max_avg);
        out << "<text x=\"10\" y=\"" << (y + bar_h - 4) << "\">" << row.tag << "</text>\n";
        out << "<rect x=\"" << label_w << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
            << bar_h << "\" fill=\"#4878a8\"/>\n";
        out << "<text x=\"" << (label_w + w + 6) << "\" y=\"" << (y + bar_h - 4) << "\">"
            << fmt_double(avg) << "</text>\n";
        y += bar_h + gap;
    }
    out << "</svg>\n";
}

}  // namespace

ReportResult build_report(const std::vector<Trajectory>& scored,
                          const std::vector<Trajectory>& scored_alt, const ReportConfig& cfg,
                          const std::string& out_dir) {
    if (scored.empty()) throw PipelineError("analysis: scored trajectory set is empty");
    fs::create_directories(out_dir);

    Tables tables = build_tables(scored, cfg.exclude_tags);
    ReportResult result;
    result.ranking = rank_tags(tables.rewards, tables.features);
    CharacteristicSeries series = characteristic_series(tables.rewards, tables.features);
    result.nmi_appearances = normalized_mi(series.appearances, series.rewards, cfg.bins, cfg.norm);
    result.nmi_complexity = normalized_mi(series.complexity, series.rewards, cfg.bins, cfg.norm);
    result.nmi_tag = normalized_mi(series.tag_ids, series.rewards, cfg.bins, cfg.norm);
    // the other normalization, reported alongside the configured one
    const NmiNorm alt_norm =
        cfg.norm == NmiNorm::Geometric ? NmiNorm::Arithmetic : NmiNorm::Geometric;
    NmiResult alt_app = normalized_mi(series.appearances, series.rewards, cfg.bins, alt_norm);
    NmiResult alt_cpx = normalized_mi(series.complexity, series.rewards, cfg.bins, alt_norm);
    NmiResult alt_tag = normalized_mi(series.tag_ids, series.rewards, cfg.bins, alt_norm);

    const fs::path dir(out_dir);
    write_pos_summary(result.ranking, cfg.config_hash, dir / "pos_summary.csv");
    write_mi_scores(result, cfg.config_hash, dir / "mi_scores.csv");
    write_bar_chart(result.ranking, 1, "Per-tag average reward (method 1)",
                    dir / "avg_method1.svg");
    write_bar_chart(result.ranking, 2, "Per-tag average reward (method 2)",
                    dir / "avg_method2.svg");

    std::size_t steps = 0;
    for (const Trajectory& t : scored) steps += t.steps.size();

    std::ofstream out = open_out(dir / "report.md");
    out << "# Reward analysis report\n\n";
    out << "## Dataset\n\n";
    out << "- trajectories: " << scored.size() << "\n";
    out << "- transitions: " << steps << "\n";
    out << "- distinct words (surface, tag): " << tables.features.size() << "\n";
    out << "- distinct tags: " << result.ranking.rows.size() << "\n\n";

    out << "## Per-tag average rewards\n\n";
    out << "| tag | n_s | avg method 1 | avg method 2 | rank m1 | rank m2 |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const TagSummary& row : result.ranking.rows) {
        out << "| " << row.tag << " | " << row.n_s << " | " << fmt_double(row.avg_method1)
            << " | " << fmt_double(row.avg_method2) << " | " << row.rank_method1 << " | "
            << row.rank_method2 << " |\n";
    }
    out << "\nRanking agreement (Spearman, method 1 vs method 2): "
        << fmt_double(result.ranking.spearman) << "\n\n";

    const char* norm_name = cfg.norm == NmiNorm::Geometric ? "geometric" : "arithmetic";
    const char* alt_name = cfg.norm == NmiNorm::Geometric ? "arithmetic" : "geometric";
    out << "## Normalized mutual information vs rewards\n\n";
    out << "| characteristic | nmi (" << norm_name << ") | nmi (" << alt_name << ") |\n";
    out << "|---|---|---|\n";
    out << "| appearances | " << fmt_double(result.nmi_appearances.value) << " | "
        << fmt_double(alt_app.value) << " |\n";
    out << "| complexity | " << fmt_double(result.nmi_complexity.value) << " | "
        << fmt_double(alt_cpx.value) << " |\n";
    out << "| tag | " << fmt_double(result.nmi_tag.value) << " | " << fmt_double(alt_tag.value)
        << " |\n";
    if (result.nmi_appearances.warning || result.nmi_complexity.warning || result.nmi_tag.warning) {
        out << "\nWarning: at least one characteristic had a zero-entropy marginal; its NMI is "
               "reported as 0.\n";
    }
    out << "\n";

    if (!scored_alt.empty()) {
        Tables alt_tables = build_tables(scored_alt, cfg.exclude_tags);
        TagRanking alt_ranking = rank_tags(alt_tables.rewards, alt_tables.features);
        const char* alt_mode = cfg.log_pi_mode == "novice" ? "expert" : "novice";
        out << "## Alternate log-prob source (" << alt_mode << " policy)\n\n";
        out << "Ranking by method 1: ";
        for (std::size_t i = 0; i < alt_ranking.rows.size(); ++i) {
            if (i) out << " > ";
            out << alt_ranking.rows[i].tag;
        }
        out << "\n\nSpearman m1 vs m2 under the alternate source: "
            << fmt_double(alt_ranking.spearman) << "\n\n";
    }

    out << "## Provenance\n\n";
    out << "- config_hash: " << cfg.config_hash << "\n";
    out << "- seed: " << cfg.seed << "\n";
    out << "- reward bins: " << cfg.bins << "\n";
    out << "- nmi normalization: " << norm_name << "\n";
    out << "- log-prob source for rewards: " << cfg.log_pi_mode << "\n";
    out << "- excluded structural tags:";
    if (cfg.exclude_tags.empty()) {
        out << " none";
    } else {
        for (const std::string& tag : cfg.exclude_tags) out << " " << tag;
    }
    out << "\n";

    result.files = {"pos_summary.csv", "mi_scores.csv", "avg_method1.svg", "avg_method2.svg",
                    "report.md"};
    return result;
}

}  // namespace airlex
