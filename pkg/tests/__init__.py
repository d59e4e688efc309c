# Test suite for photinus
