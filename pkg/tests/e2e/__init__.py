# End-to-End Tests
