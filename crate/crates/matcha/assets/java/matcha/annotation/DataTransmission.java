package matcha.annotation;

import java.lang.annotation.ElementType;
import java.lang.annotation.Retention;
import java.lang.annotation.RetentionPolicy;
import java.lang.annotation.Target;

/** Marks a variable whose value leaves the app. */
@Retention(RetentionPolicy.SOURCE)
@Target({ElementType.FIELD, ElementType.LOCAL_VARIABLE, ElementType.PARAMETER})
public @interface DataTransmission {
    /** Ids of the {@link DataAccess} annotations whose data is sent. */
    String[] accessId();

    CollectionAttribute[] collectionAttribute();

    SharingAttribute[] sharingAttribute();
}
