#include "fibdual/pairing.hpp"
