#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "hyreach/levelset.hpp"

namespace hyreach {

// Stack of per-stage value layers over one StateGrid. Layer k holds the value
// function after k route links; a hybrid state is reachable at stage k iff its
// value is <= 0. Storage, interpolation and (de)serialization only — the
// backward induction that fills the layers lives in dp.hpp.
class ValueField {
  public:
    explicit ValueField(StateGrid grid);

    const StateGrid& grid() const { return grid_; }
    int stages() const { return static_cast<int>(layers_.size()); }
    int last_stage() const { return stages() - 1; }

    // Appends a zero-filled layer and returns its mutable storage.
    double* add_layer();

    const double* layer(int k) const { return layers_.at(k).data(); }
    double* layer(int k) { return layers_.at(k).data(); }

    double value(int k, int i1, int i2, int q, int ip) const {
        return layers_.at(k)[grid_.index(i1, i2, q, ip)];
    }

    // Trilinear interpolation of layer k at a continuous hybrid state.
    double interp(int k, double x1, double x2, int q, double p) const {
        return grid_.interp(layer(k), x1, x2, q, p);
    }

    // Smallest value over all (q, p) nodes at one spatial node of layer k;
    // <= 0 exactly when some mode/lock combination is reachable there.
    double min_over_modes(int k, int i1, int i2) const;

    // Native-endian binary dump of the grid axes plus every layer.
    void dump(const std::filesystem::path& path) const;
    static ValueField load(const std::filesystem::path& path);

    // One stage as CSV: header "x1,x2,q,p,v", rows in grid index order,
    // numbers printed with round-trip precision.
    void write_stage_csv(int k, std::ostream& out) const;

  private:
    StateGrid grid_;
    std::vector<std::vector<double>> layers_;
};

}  // namespace hyreach
