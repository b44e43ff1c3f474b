#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace hyreach {

// One route link: the vehicle covers distance_m at constant speed_mps, taking
// dt_s() seconds. `index` is the 1-based position in this profile; `source_index`
// is the 1-based index of the originating route link (== index unless the profile
// was produced by subdivide(), in which case several sub-links share a source).
struct ProfileLink {
    int index = 0;
    int source_index = 0;
    double distance_m = 0;
    double speed_mps = 0;

    double dt_s() const { return distance_m / speed_mps; }

    friend bool operator==(const ProfileLink&, const ProfileLink&) = default;
};

// A driving profile: links 1..stage_count() with cached cumulative time/distance.
class DrivingProfile {
  public:
    explicit DrivingProfile(std::vector<ProfileLink> links);

    int stage_count() const { return static_cast<int>(links_.size()); }
    const ProfileLink& link(int k) const { return links_.at(k - 1); }  // 1-based
    const std::vector<ProfileLink>& links() const { return links_; }

    // T_k / D_k: cumulative time / distance over links 1..k (index 0 gives 0).
    double time_at(int k) const { return cum_time_.at(k); }
    double distance_at(int k) const { return cum_dist_.at(k); }
    double total_time_s() const { return cum_time_.back(); }
    double total_distance_m() const { return cum_dist_.back(); }

    // First n links as a standalone profile (cumulative sums recomputed).
    DrivingProfile head(int n) const;

    friend bool operator==(const DrivingProfile& a, const DrivingProfile& b) {
        return a.links_ == b.links_;
    }

  private:
    std::vector<ProfileLink> links_;
    std::vector<double> cum_time_, cum_dist_;
};

// CSV with header "k,d_m,sigma_mps"; strict UTF-8, '.' decimal separator, LF
// newlines, k contiguous from 1. Errors name the offending line and link.
DrivingProfile load_profile(const std::filesystem::path& csv_path);
DrivingProfile parse_profile(std::istream& in, const std::string& origin);
void save_profile(const DrivingProfile& profile, std::ostream& out);
void save_profile(const DrivingProfile& profile, const std::filesystem::path& csv_path);

// count identical links (count >= 1).
DrivingProfile constant_profile(int count, double distance_m, double speed_mps);

// Subdivide every link whose duration exceeds max_step_s into equal sub-links
// (source_index preserved). max_step_s <= 0 returns the profile unchanged.
DrivingProfile subdivide(const DrivingProfile& profile, double max_step_s);

}  // namespace hyreach
