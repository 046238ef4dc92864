package matcha.annotation;

/** Collection answers for {@link DataTransmission}. Give exactly one of each _TRUE/_FALSE pair. */
public enum CollectionAttribute {
    TRANSMITTED_OFF_DEVICE_TRUE,
    TRANSMITTED_OFF_DEVICE_FALSE,
    NOT_STORED_IN_BACKEND_TRUE,
    NOT_STORED_IN_BACKEND_FALSE,
    ENCRYPTED_IN_TRANSIT_TRUE,
    ENCRYPTED_IN_TRANSIT_FALSE,
    OPTIONAL_COLLECTION_TRUE,
    OPTIONAL_COLLECTION_FALSE,
    USER_TO_USER_ENCRYPTION_TRUE,
    USER_TO_USER_ENCRYPTION_FALSE,
    COLLECTED_FOR_APP_FUNCTIONALITY,
    COLLECTED_FOR_ANALYTICS,
    COLLECTED_FOR_DEVELOPER_COMMUNICATIONS,
    COLLECTED_FOR_ADVERTISING_OR_MARKETING,
    COLLECTED_FOR_FRAUD_PREVENTION_SECURITY_COMPLIANCE,
    COLLECTED_FOR_PERSONALIZATION,
    COLLECTED_FOR_ACCOUNT_MANAGEMENT
}
