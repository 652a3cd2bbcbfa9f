#ifndef LID_KERNELS_HPP
#define LID_KERNELS_HPP

#include <span>
#include <vector>

#include "lid/neural.hpp"

namespace lid {

// Batch drivers over the network. Each has an OpenMP version (the default
// used by training and evaluation) and a serial reference kept for testing;
// the pair is bit-identical by construction:
//   - scoring is independent per sample;
//   - the gradient reduction accumulates fixed blocks of kGradBlockSize
//     consecutive samples in index order and then combines the block
//     buffers in block order, so the floating-point association does not
//     depend on the thread count.

inline constexpr std::size_t kGradBlockSize = 64;

std::vector<double> batch_scores_serial(const LstmNetwork& net,
                                        const std::vector<PaddedTensor>& inputs);
std::vector<double> batch_scores(const LstmNetwork& net,
                                 const std::vector<PaddedTensor>& inputs);

// Mean-over-batch gradient of the BCE loss w.r.t. every parameter, written
// into `grads` (resized to the parameter count). Returns the mean loss.
// `idx` selects the batch out of `data`. Throws a numeric error naming the
// parameter block if a non-finite value appears.
double batch_gradients_serial(const LstmNetwork& net, const std::vector<Sample>& data,
                              std::span<const int> idx, std::vector<double>& grads);
double batch_gradients(const LstmNetwork& net, const std::vector<Sample>& data,
                       std::span<const int> idx, std::vector<double>& grads);

// Phonetic encoding of many words; parallel version writes each slot
// independently.
std::vector<EncodedWord> encode_corpus_serial(const std::vector<std::string>& words,
                                              const PhoneticLibrary& lib);
std::vector<EncodedWord> encode_corpus(const std::vector<std::string>& words,
                                       const PhoneticLibrary& lib);

} // namespace lid

#endif
